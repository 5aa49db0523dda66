"""``conelab`` command line: build cones, solve the exact LPs, search colourings
and homomorphisms, and build/verify the cone certificates.

Every run prints a JSON report (``--json``) or a one-line summary, and exits
0 on a verified positive result, 1 on a verified negative one, 2 when a cap
or scope limit left the answer undecided, and 64 on a usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from importlib import metadata

from . import certificates as cert
from .chromatic import (
    DEFAULT_EXP_BOUND,
    DEFAULT_MAX_VERTICES,
    DEFAULT_NODE_CAP,
    SearchCapError,
    chromatic_number,
    find_homomorphism,
    loop_to_constant_distances,
)
from .cones import HomomorphismMap, generalized_cone, serialize_labels, verify_homomorphism
from .graph import (
    FAMILIES,
    Graph,
    GraphFormatError,
    InvalidParameterError,
    complete,
    generate,
    kneser,
    parse_graph,
    serialize_graph,
)
from .indep import DEFAULT_CAP, TruncatedFamilyError, maximal_independent_sets
from .ratlp import (
    fractional_chromatic,
    frac_str,
    verify_fractional_clique,
    verify_fractional_colouring,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INDETERMINATE, EXIT_USAGE = 0, 1, 2, 64

GRAMMAR = (
    "conelab <subcommand> [--file F | --gen FAMILY P...] [--H-file F2 | --H-gen FAMILY P...] "
    "[--n N | --h v:k,v:k,...] [--cap N] [--json]"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"conelab: error: {message}\nusage: {GRAMMAR}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def graph_hash(G: Graph) -> str:
    return "sha256:" + hashlib.sha256(serialize_graph(G).encode()).hexdigest()


# -- argument helpers ------------------------------------------------------------------

def _load(path: str | None, gen: list[str] | None, what: str, required: bool = True) -> Graph | None:
    if path and gen:
        raise UsageError(f"give either a file or a generator for {what}, not both")
    if path:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    if gen:
        return generate(gen[0], gen[1:])
    if required:
        raise UsageError(f"{what} is required (--file/--gen or --H-file/--H-gen)")
    return None


def _G(a, required=True):
    return _load(a.file, a.gen, "G", required)


def _H(a, required=True):
    return _load(a.H_file, a.H_gen, "H", required)


def _heights(a, H: Graph):
    if a.n is not None and a.h:
        raise UsageError("give either --n or --h")
    if a.h:
        hs = {}
        for part in a.h.split(","):
            try:
                v, k = part.split(":")
                hs[int(v)] = int(k)
            except ValueError:
                raise UsageError(f"bad --h entry {part!r}; expected v:k") from None
        if sorted(hs) != list(range(H.n)):
            raise UsageError(f"--h must give a height for each of the {H.n} vertices of H")
        return tuple(hs[v] for v in range(H.n))
    if a.n is None:
        raise UsageError("--n or --h is required")
    return a.n


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


# -- subcommands --------------------------------------------------------------------------
# Each returns (exit code, inputs, outputs, verdict, summary line).

def cmd_gen(a):
    G = _G(a)
    text = serialize_graph(G)
    _write(a.out, text)
    return EXIT_OK, {"G": graph_hash(G)}, {"n": G.n, "m": G.edge_count, "out": a.out}, \
        {"status": True}, f"generated graph with {G.n} vertices, {G.edge_count} edges"


def cmd_cone(a):
    G = _G(a)
    H = _H(a, required=False) or complete(1)
    C = generalized_cone(G, H, _heights(a, H))
    text = f"c cone heights {' '.join(map(str, C.heights))}\n" + serialize_graph(C.graph) + serialize_labels(C)
    _write(a.out, text)
    return EXIT_OK, {"G": graph_hash(G), "H": graph_hash(H), "heights": list(C.heights)}, \
        {"n": C.n, "m": C.graph.edge_count, "hash": graph_hash(C.graph), "out": a.out}, \
        {"status": True}, f"cone with {C.n} vertices, {C.graph.edge_count} edges"


def _lp_report(G: Graph, cap: int):
    lp = fractional_chromatic(G, cap)
    pv = verify_fractional_colouring(G, lp.primal)
    dv = verify_fractional_clique(G, lp.dual, cap)
    ok = pv.valid and dv.valid and lp.primal.weight == lp.dual.weight
    out = {
        "chi_f": frac_str(lp.value),
        "columns": lp.family_size,
        "iterations": lp.iterations,
        "primal": lp.primal.to_json(),
        "dual": lp.dual.to_json(),
    }
    verdict = {
        "status": ok,
        "strong_duality": lp.primal.weight == lp.dual.weight,
        "primal": pv.to_json(),
        "dual": dv.to_json(),
    }
    return lp, ok, out, verdict


def cmd_chif(a):
    G = _G(a)
    lp, ok, out, verdict = _lp_report(G, a.cap)
    return (EXIT_OK if ok else EXIT_NEGATIVE), {"G": graph_hash(G)}, out, verdict, \
        f"chi_f = {frac_str(lp.value)} (primal/dual verified: {ok})"


def cmd_chi(a):
    G = _G(a)
    res = chromatic_number(G, a.max_vertices, a.node_cap)
    g = G
    proper = all(res.colouring[u] != res.colouring[v] for u, v in g.edges())
    out = {"chi": res.chi, "colouring": res.colouring, "clique": res.clique, "nodes": res.nodes_explored}
    verdict = {"status": proper, "proper": proper, "search_exhausted": True}
    return (EXIT_OK if proper else EXIT_NEGATIVE), {"G": graph_hash(G)}, out, verdict, f"chi = {res.chi}"


def cmd_mis(a):
    G = _G(a)
    fam = maximal_independent_sets(G, a.cap)
    out = {"count": len(fam), "truncated": fam.truncated}
    if a.list:
        out["sets"] = [list(s) for s in fam.sets]
    verdict = {"status": None if fam.truncated else True}
    if fam.truncated:
        verdict["reason"] = f"more than {a.cap} maximal independent sets"
        return EXIT_INDETERMINATE, {"G": graph_hash(G), "cap": a.cap}, out, verdict, \
            f"at least {len(fam)} maximal independent sets (cap reached)"
    return EXIT_OK, {"G": graph_hash(G), "cap": a.cap}, out, verdict, f"{len(fam)} maximal independent sets"


def cmd_certify(a):
    G = _G(a)
    H = _H(a, required=False) or complete(2)
    n = a.n
    if n is None:
        raise UsageError("certify needs --n")
    lpG = fractional_chromatic(G, a.cap)
    lpH = fractional_chromatic(H, a.cap)
    cg, ch = lpG.value, lpH.value
    inputs = {"G": graph_hash(G), "H": graph_hash(H), "n": n}
    out = {"chif_G": frac_str(cg), "chif_H": frac_str(ch)}
    try:
        tv = cert.theorem_value(cg, ch, n)
    except cert.OutOfTheoremScopeError as e:
        return EXIT_INDETERMINATE, inputs, out, {"status": None, "reason": str(e)}, str(e)
    out["theorem_value"] = frac_str(tv.value)
    verdict: dict = {}
    statuses = []
    if a.kind in ("clique", "both"):
        if n % 2 == 1 and n >= 3:
            cq = cert.build_clique_certificate_odd(G, H, n, lpG.dual, lpH.dual, cg, ch)
            v = cq.verify(a.cap)
            out["clique"] = cq.clique.to_json()
            ok = v.valid and cq.total == tv.value
            verdict["clique"] = {**v.to_json(), "matches_theorem": cq.total == tv.value}
            statuses.append(ok)
        else:
            verdict["clique"] = {"skipped": "explicit clique certificate is for odd n >= 3"}
    if a.kind in ("colouring", "both"):
        try:
            res = cert.colouring_certificate(G, H, n, a.max_scale, lpG, lpH)
        except cert.SingularParameterError as e:
            verdict["colouring"] = {"status": None, "reason": str(e)}
            statuses.append(None)
        else:
            if isinstance(res, cert.KneserEmbedding):
                verdict["colouring"] = {"status": None, "reason": f"no Kneser embedding found at m <= {a.max_scale}"}
                statuses.append(None)
            else:
                j = res.to_json()
                out["colouring"] = {"pattern": j["pattern"], "params": j["params"], "sets": j["sets"]}
                ok = j["verified"]["valid"] and j["verified"]["exact_cover"] and res.total == tv.value
                verdict["colouring"] = {**j["verified"], "matches_theorem": res.total == tv.value}
                statuses.append(ok)
    if any(s is False for s in statuses):
        code, status = EXIT_NEGATIVE, False
    elif any(s is None for s in statuses) or not statuses:
        code, status = EXIT_INDETERMINATE, None
    else:
        code, status = EXIT_OK, True
    verdict["status"] = status
    return code, inputs, out, verdict, f"theorem value {frac_str(tv.value)}; certificates verified: {status}"


def _witness(q: Fraction) -> Graph:
    """A graph with fractional chromatic number q: K(p, r) for q = p/r."""
    return kneser(q.numerator, q.denominator) if q.denominator > 1 else complete(q.numerator)


def cmd_theorem(a):
    if a.chifG is None or a.chifH is None or a.n is None:
        raise UsageError("theorem needs --chifG, --chifH and --n")
    cg, ch = _frac(a.chifG), _frac(a.chifH)
    inputs = {"chif_G": frac_str(cg), "chif_H": frac_str(ch), "n": a.n}
    try:
        tv = cert.theorem_value(cg, ch, a.n)
    except cert.OutOfTheoremScopeError as e:
        return EXIT_INDETERMINATE, inputs, {}, {"status": None, "reason": str(e)}, str(e)
    out = {"parity": tv.parity, "value": frac_str(tv.value)}
    verdict: dict = {"status": True}
    if a.cross_check:
        G = _G(a, required=False) or _witness(cg)
        H = _H(a, required=False) or _witness(ch)
        C = generalized_cone(G, H, a.n)
        inputs.update({"G": graph_hash(G), "H": graph_hash(H)})
        lpG = fractional_chromatic(G, a.cap)
        lpH = fractional_chromatic(H, a.cap)
        if (lpG.value, lpH.value) != (cg, ch):
            raise UsageError(f"given graphs have chi_f {lpG.value}, {lpH.value}, not {cg}, {ch}")
        _, ok, lp_out, lp_verdict = _lp_report(C.graph, a.cap)
        out["cross_check"] = {"cone_vertices": C.n, "chi_f": lp_out["chi_f"], "columns": lp_out["columns"]}
        agree = ok and Fraction(lp_out["chi_f"]) == tv.value
        verdict = {"status": agree, "lp_verified": ok, "agrees": agree}
    code = EXIT_OK if verdict["status"] else EXIT_NEGATIVE
    return code, inputs, out, verdict, f"theorem value ({tv.parity} n) = {frac_str(tv.value)}"


def cmd_identities(a):
    if a.chifG is None or a.chifH is None or a.n is None:
        raise UsageError("identities needs --chifG, --chifH and --n")
    cg, ch = _frac(a.chifG), _frac(a.chifH)
    p = cert.cone_parameters(cg, ch, a.n, a.s, a.t)
    rep = cert.check_parameter_identities(p)
    out = {"params": p.to_json()}
    verdict = {**rep.to_json(), "status": rep.ok, "negative_deltas": p.negative_deltas}
    return (EXIT_OK if rep.ok else EXIT_NEGATIVE), {"chif_G": frac_str(cg), "chif_H": frac_str(ch), "n": a.n}, \
        out, verdict, f"{len(rep.checked)} identities checked, {len(rep.failed)} failed"


def cmd_expgraph(a):
    G = _G(a)
    K = _H(a)
    table = loop_to_constant_distances(K, G, a.bound)
    E = table.exp
    out = {
        "vertices": E.graph.n,
        "loops": len(E.loop_set),
        "distances": {str(c): d for c, d in sorted(table.distances.items())},
        "min_distance": table.minimum,
    }
    return EXIT_OK, {"G": graph_hash(G), "K": graph_hash(K), "bound": a.bound}, out, {"status": True}, \
        f"K^G: {E.graph.n} vertices, {len(E.loop_set)} loops, min loop-to-constant distance {table.minimum}"


def cmd_hom(a):
    G = _G(a)
    K = _H(a)
    inputs = {"G": graph_hash(G), "K": graph_hash(K)}
    if a.map:
        try:
            f = tuple(int(x) for x in a.map.split(","))
        except ValueError:
            raise UsageError("--map must be comma-separated integers") from None
        ok, bad = verify_homomorphism(HomomorphismMap(G, K, f))
        verdict = {"status": ok, "witness_edge": None if bad is None else list(bad)}
        return (EXIT_OK if ok else EXIT_NEGATIVE), inputs, {"mapping": list(f)}, verdict, \
            "map is a homomorphism" if ok else f"edge {bad} is not preserved"
    res = find_homomorphism(G, K, a.node_cap)
    out = {"status": res.status, "nodes": res.nodes, "mapping": list(res.mapping.mapping) if res.found else None}
    if res.status == "cap":
        return EXIT_INDETERMINATE, inputs, out, {"status": None, "reason": f"node cap {a.node_cap} reached"}, \
            "search hit the node cap"
    if res.found:
        ok, _ = verify_homomorphism(res.mapping)
        return (EXIT_OK if ok else EXIT_NEGATIVE), inputs, out, {"status": ok}, "homomorphism found"
    return EXIT_NEGATIVE, inputs, out, {"status": False, "search_exhausted": True}, "no homomorphism (search exhausted)"


def _write(path: str | None, text: str) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- parser -------------------------------------------------------------------------------

COMMANDS = {
    "gen": (cmd_gen, "write a generated graph"),
    "cone": (cmd_cone, "build a cone or (H,h)-cone"),
    "chif": (cmd_chif, "exact fractional chromatic number with certificates"),
    "chi": (cmd_chi, "exact chromatic number"),
    "mis": (cmd_mis, "count or list maximal independent sets"),
    "certify": (cmd_certify, "build and verify cone certificates"),
    "theorem": (cmd_theorem, "closed-form cone value, optionally cross-checked by LP"),
    "identities": (cmd_identities, "exact check of the parameter identities"),
    "expgraph": (cmd_expgraph, "exponential graph K^G and loop-to-constant distances"),
    "hom": (cmd_hom, "homomorphism search or verification"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", help="graph G in 'p n m' / 'e u v' format")
    common.add_argument("--gen", nargs="+", metavar="ARG",
                        help=f"generate G: FAMILY P... with FAMILY in {', '.join(sorted(FAMILIES))}")
    common.add_argument("--H-file", dest="H_file", help="second graph (pattern H or target K)")
    common.add_argument("--H-gen", dest="H_gen", nargs="+", metavar="ARG", help="generate the second graph")
    common.add_argument("--n", type=int, help="constant cone height")
    common.add_argument("--h", help="per-vertex heights v:k,v:k,...")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help=f"maximal independent set cap (default {DEFAULT_CAP})")
    common.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP,
                        help=f"search node cap (default {DEFAULT_NODE_CAP})")
    common.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    common.add_argument("--out", help="output file for gen/cone (default stdout)")

    p = _Parser(prog="conelab", description="Exact fractional colouring of graph cones.")
    p.add_argument("--version", action="version", version=f"conelab {_version()}")
    sub = p.add_subparsers(dest="command", metavar="subcommand", parser_class=_Parser)
    sub.required = True
    subs = {name: sub.add_parser(name, parents=[common], help=text, description=text)
            for name, (_, text) in COMMANDS.items()}

    subs["chi"].add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    subs["mis"].add_argument("--list", action="store_true", help="include the sets in the report")
    subs["certify"].add_argument("--kind", choices=["clique", "colouring", "both"], default="both")
    subs["certify"].add_argument("--max-scale", type=int, default=3,
                                 help="largest m tried for H -> K(sm, tm) (default 3)")
    for name in ("theorem", "identities"):
        subs[name].add_argument("--chifG", help="chi_f(G) as a rational, e.g. 5/2")
        subs[name].add_argument("--chifH", help="chi_f(H) as a rational")
    subs["theorem"].add_argument("--cross-check", action="store_true",
                                 help="solve the LP on a cone with these values (Kneser witnesses by default)")
    subs["identities"].add_argument("--s", type=int, help="Kneser numerator (scaled pattern)")
    subs["identities"].add_argument("--t", type=int, help="Kneser denominator (scaled pattern)")
    subs["expgraph"].add_argument("--bound", type=int, default=DEFAULT_EXP_BOUND,
                                  help=f"largest |V(K)|^|V(G)| allowed (default {DEFAULT_EXP_BOUND})")
    subs["hom"].add_argument("--map", help="verify this map (comma-separated images) instead of searching")
    return p


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        code, inputs, outputs, verdict, summary = func(args)
    except (UsageError, InvalidParameterError, GraphFormatError, OSError) as e:
        print(f"conelab: error: {e}\nusage: {GRAMMAR}", file=sys.stderr)
        return EXIT_USAGE
    except (TruncatedFamilyError, SearchCapError) as e:
        code, inputs, outputs = EXIT_INDETERMINATE, {}, {}
        verdict, summary = {"status": None, "reason": str(e)}, f"indeterminate: {e}"
    report = {
        "schema": 1,
        "version": _version(),
        "command": ["conelab", *argv],
        "inputs": inputs,
        "outputs": outputs,
        "verdict": verdict,
    }
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    writes_payload = args.command in ("gen", "cone") and not (args.out and args.out != "-")
    if args.json and not writes_payload:
        print(json.dumps(report, indent=2, sort_keys=True))
        print(summary, file=sys.stderr)
    elif writes_payload:
        print(summary, file=sys.stderr)
    else:
        print(summary)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
