"""Closed-form cone constants and the explicit fractional clique / fractional
colouring certificates for (H, n)-cones, plus the constructive proper colouring
bounding the ordinary chromatic number.

Every builder returns a certificate object; validity is always decided by the
extensional verifiers in :mod:`conelab.ratlp`, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .chromatic import chromatic_number, find_homomorphism
from .cones import (
    Apex,
    ConeGraph,
    HomomorphismMap,
    Inner,
    generalized_cone,
    pattern_homomorphism,
)
from .graph import Graph, InvalidParameterError, kneser, kneser_vertices
from .indep import DEFAULT_CAP
from .ratlp import (
    FractionalClique,
    FractionalColouring,
    fractional_chromatic,
    frac_str,
    tighten_colouring,
    verify_fractional_clique,
    verify_fractional_colouring,
)


class SingularParameterError(InvalidParameterError):
    """The odd-height colouring weights divide by chi_f(G) - 2."""


class OutOfTheoremScopeError(InvalidParameterError):
    """chi_f(H) > chi_f(G): no closed form is claimed there."""


class CertificateRefusedError(InvalidParameterError):
    """Inputs do not meet a builder's preconditions."""


Q = Fraction


def _geom(r: Fraction, lo: int, hi: int) -> Fraction:
    """sum_{k=lo}^{hi} r^k (empty sum is 0)."""
    return sum((r**k for k in range(lo, hi + 1)), Q(0))


@dataclass
class ConeParams:
    n: int
    chif_G: Fraction
    chif_H: Fraction
    s_G: int
    t_G: int
    s_H: int
    t_H: int
    tau: Fraction
    tau_prime: Fraction
    alpha: list[Fraction]
    sigma: list[Fraction]
    sigma_prime: list[Fraction]
    delta: dict[int, Fraction] | None

    @property
    def s(self) -> int:
        """Kneser pattern numerator for this parity (chi_f(G) if n even, chi_f(H) if odd)."""
        return self.s_G if self.n % 2 == 0 else self.s_H

    @property
    def t(self) -> int:
        return self.t_G if self.n % 2 == 0 else self.t_H

    def require_delta(self) -> dict[int, Fraction]:
        if self.delta is None:
            if self.n % 2 == 0:
                raise InvalidParameterError("delta weights exist only for odd n >= 3")
            raise SingularParameterError("delta weights are undefined when chi_f(G) = 2")
        return self.delta

    @property
    def negative_deltas(self) -> list[int]:
        return sorted(i for i, d in (self.delta or {}).items() if d < 0)

    def to_json(self) -> dict:
        f = frac_str
        return {
            "n": self.n,
            "chif_G": f(self.chif_G),
            "chif_H": f(self.chif_H),
            "s_G": self.s_G, "t_G": self.t_G, "s_H": self.s_H, "t_H": self.t_H,
            "tau": f(self.tau),
            "tau_prime": f(self.tau_prime),
            "alpha": [f(a) for a in self.alpha],
            "sigma": [f(a) for a in self.sigma],
            "sigma_prime": [f(a) for a in self.sigma_prime],
            "delta": None if self.delta is None else {str(i): f(d) for i, d in sorted(self.delta.items())},
        }


def cone_parameters(chif_G, chif_H, n: int, s: int | None = None, t: int | None = None) -> ConeParams:
    """All derived constants for (chi_f(G), chi_f(H), n), exactly.

    ``s``, ``t`` optionally choose a non-reduced Kneser pattern K(s, t) for the
    relevant parity (s/t must equal chi_f(G) for even n, chi_f(H) for odd n).
    """
    cg, ch = Q(chif_G), Q(chif_H)
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    if cg < 2:
        raise InvalidParameterError("chi_f(G) must be >= 2")
    if ch < 1:
        raise InvalidParameterError("chi_f(H) must be >= 1")
    sG, tG = cg.numerator, cg.denominator
    sH, tH = ch.numerator, ch.denominator
    if (s is None) != (t is None):
        raise InvalidParameterError("give both s and t or neither")
    if s is not None:
        target = cg if n % 2 == 0 else ch
        if s < 1 or t < 1 or Q(s, t) != target:
            raise InvalidParameterError(f"s/t = {s}/{t} must equal {target}")
        if n % 2 == 0:
            sG, tG = s, t
        else:
            sH, tH = s, t

    r = cg - 1
    S = _geom(r, 0, n - 1)
    tau = 1 / S
    tau_p = 1 / (ch * S + 1 - ch)
    alpha = [tau_p * r ** (n - 1 - i) for i in range(n)]
    sigma = [tau / tG * r**i for i in range(n)]
    sigma_p = [ch / cg * tau_p / tH * r**i for i in range(n)]

    delta = None
    if n % 2 == 1 and n >= 3 and cg != 2:
        c = sigma_p[0] * (tH * cg - sH) / (cg - 2)
        delta = {0: sH * sigma_p[0] + c * (r - 1)}
        for i in range(2, n - 2, 2):
            delta[i] = c * (r ** (i + 1) - r ** (i - 1))
        delta[n - 1] = (cg - ch) / cg - c * (r ** (n - 2) - 1) - (sH - tH) * sigma_p[0]
    return ConeParams(n, cg, ch, sG, tG, sH, tH, tau, tau_p, alpha, sigma, sigma_p, delta)


@dataclass
class TheoremValue:
    parity: str
    value: Fraction


def theorem_value(chif_G, chif_H, n: int) -> TheoremValue:
    """chi_f of the (H, n)-cone over G predicted from chi_f(G), chi_f(H) and n."""
    cg, ch = Q(chif_G), Q(chif_H)
    if ch > cg:
        raise OutOfTheoremScopeError(f"chi_f(H) = {ch} exceeds chi_f(G) = {cg}")
    p = cone_parameters(cg, ch, n)
    if n % 2 == 0:
        return TheoremValue("even", cg + p.tau)
    return TheoremValue("odd", cg + ch * p.tau_prime)


@dataclass
class IdentityReport:
    checked: list[str] = field(default_factory=list)
    failed: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed

    def check(self, name: str, lhs, rhs) -> None:
        self.checked.append(name)
        if lhs != rhs:
            self.failed.append(f"{name}: {lhs} != {rhs}")

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failed": self.failed, "skipped": self.skipped}


def check_parameter_identities(p: ConeParams) -> IdentityReport:
    """Exact check of the algebraic identities the certificates rely on."""
    rep = IdentityReport()
    n, cg, ch = p.n, p.chif_G, p.chif_H
    a, sg, sp = p.alpha, p.sigma, p.sigma_prime
    r = cg - 1

    rep.check("tau_prime_forms", p.tau_prime, 1 / (ch * _geom(r, 1, n - 1) + 1))
    for k in range(n - 1):
        rep.check(f"alpha_step[{k}]", a[k] + a[k + 1], a[k + 1] * cg)
    rep.check("alpha_sum", sum(a[: n - 1], Q(0)) + a[n - 1] / ch, 1 / ch)
    rep.check("alpha_unit", ch * sum(a[: n - 1], Q(0)) + a[n - 1], 1)
    for k in range(n - 1):
        rep.check(f"sigma_step[{k}]", sg[k] + sg[k + 1], sg[k] * cg)
    rep.check("sigma_total", sum(sg, Q(0)) / cg, Q(1, p.s_G))
    if n % 2 == 0:
        rep.check("sigma_even_sum", sum(sg[0:n - 1:2], Q(0)), Q(1, p.s_G))

    if n % 2 == 0 or n < 3:
        rep.skipped.append("odd-case sigma'/delta identities (n not odd >= 3)")
        return rep
    if p.delta is None:
        rep.skipped.append("odd-case sigma'/delta identities (chi_f(G) = 2 is singular)")
        return rep
    s, t, d = p.s_H, p.t_H, p.delta

    def dsum(upto):  # delta_0 + delta_2 + ... + delta_upto
        return sum((d[i] for i in range(0, upto + 1, 2)), Q(0))

    def spsum(lo, hi):
        return sum(sp[lo:hi + 1], Q(0))

    for k in range(n - 1):
        rep.check(f"sigma_prime_step[{k}]", sp[k] + sp[k + 1], sp[k] * cg)
    rep.check("eq_sigma_prime", s * spsum(1, n - 1), ch / cg - t * sp[0])
    rep.check("eq_delta", dsum(n - 1), t * sp[0] + (cg - ch) / cg)
    rep.check("eq_unit", s * spsum(1, n - 1) + dsum(n - 1), 1)
    for i in range(2, n, 2):
        rep.check(
            f"eq_even_layer[{i}]",
            (s - t) * spsum(1, i - 1) * cg + dsum(i - 2) * cg,
            s * spsum(1, i) + dsum(i - 2),
        )
    for i in range(1, n - 1, 2):
        rep.check(
            f"eq_odd_layer[{i}]",
            t * spsum(0, i - 1) * cg - s * spsum(1, i - 1),
            dsum(i - 1),
        )
    rep.check("eq_apex_block", Q(s, t) * p.tau_prime, t * sp[0] * cg)
    return rep


# -- certificates -----------------------------------------------------------------

@dataclass
class CliqueCertificate:
    cone: ConeGraph
    clique: FractionalClique
    params: ConeParams

    @property
    def total(self) -> Fraction:
        return self.clique.weight

    def verify(self, cap: int = DEFAULT_CAP):
        return verify_fractional_clique(self.cone.graph, self.clique, cap)


@dataclass
class ColouringCertificate:
    cone: ConeGraph
    colouring: FractionalColouring
    params: ConeParams
    pattern: str = ""

    @property
    def total(self) -> Fraction:
        return self.colouring.weight

    def verify(self):
        return verify_fractional_colouring(self.cone.graph, self.colouring)

    def to_json(self) -> dict:
        v = self.verify()
        return {
            "pattern": self.pattern,
            "params": self.params.to_json(),
            "sets": self.colouring.to_json(),
            "verified": {
                "valid": v.valid,
                "total": frac_str(v.total),
                "min_coverage": None if v.min_coverage is None else frac_str(v.min_coverage),
                "exact_cover": v.exact_cover,
                "negative_deltas": self.params.negative_deltas,
            },
        }


def _as_clique(G: Graph, w) -> FractionalClique:
    if isinstance(w, FractionalClique):
        return w
    return FractionalClique(G, [Q(x) for x in w])


def build_clique_certificate_odd(G: Graph, H: Graph, n: int, nu, eta,
                                 chif_G=None, chif_H=None) -> CliqueCertificate:
    """Fractional clique of the (H, n)-cone over G, n odd, from optimal cliques of G and H.

    Weights: apex ``tau' eta(v)``; inner ``alpha_i nu(x) eta(v)``; base
    ``(alpha_0 - (1 - 1/chi_f(H)) alpha_{n-1}) nu(x) chi_f(H)``.
    """
    if n < 3 or n % 2 == 0:
        raise CertificateRefusedError("clique certificate needs odd n >= 3")
    nu, eta = _as_clique(G, nu), _as_clique(H, eta)
    cg = Q(chif_G) if chif_G is not None else fractional_chromatic(G).value
    ch = Q(chif_H) if chif_H is not None else fractional_chromatic(H).value
    if ch > cg:
        raise OutOfTheoremScopeError(f"chi_f(H) = {ch} exceeds chi_f(G) = {cg}")
    if nu.weight != cg or eta.weight != ch:
        raise CertificateRefusedError(
            f"cliques must be optimal: weights {nu.weight}, {eta.weight} vs {cg}, {ch}"
        )
    for name, graph, q in (("nu", G, nu), ("eta", H, eta)):
        if not verify_fractional_clique(graph, q).valid:
            raise CertificateRefusedError(f"{name} is not a fractional clique")
    p = cone_parameters(cg, ch, n)
    a = p.alpha
    C = generalized_cone(G, H, n)
    base_coef = a[0] - (1 - 1 / ch) * a[n - 1]
    eta_total = eta.weight
    w = [Q(0)] * C.n
    for k, lab in enumerate(C.labels):
        if isinstance(lab, Inner):
            w[k] = a[lab.i] * nu.weights[lab.x] * eta.weights[lab.v]
        elif isinstance(lab, Apex):
            w[k] = p.tau_prime * eta.weights[lab.v]
        else:
            w[k] = base_coef * nu.weights[lab.x] * eta_total
    return CliqueCertificate(C, FractionalClique(C.graph, w), p)


def _optimal_colouring_of(G: Graph, mu, target: Fraction, label: str) -> FractionalColouring:
    if not isinstance(mu, FractionalColouring):
        mu = FractionalColouring(G, [(frozenset(S), Q(w)) for S, w in mu])
    v = verify_fractional_colouring(G, mu)
    if v.dependent_set is not None:
        raise CertificateRefusedError(f"{label} support contains a dependent set {sorted(v.dependent_set)}")
    if not v.valid:
        raise CertificateRefusedError(f"{label} is not a fractional colouring")
    if mu.weight != target:
        raise CertificateRefusedError(f"{label} has weight {mu.weight}, expected {target}")
    return tighten_colouring(mu)


class _SetBuilder:
    """Collects cone vertices layer by layer."""

    def __init__(self, C: ConeGraph):
        self.C = C
        self.nG = C.base_graph.n
        self.out: set[int] = set()

    def layers(self, xs, layer_range, v) -> None:
        for i in layer_range:
            for x in xs:
                self.out.add(self.C.vertex(Inner(x, i, v)))

    def full(self, layer_range, v) -> None:
        self.layers(range(self.nG), layer_range, v)

    def apex(self, v) -> None:
        self.out.add(self.C.index[Apex(v)])


def build_colouring_certificate_even(G: Graph, s: int, t: int, n: int, mu,
                                     chif_G=None) -> ColouringCertificate:
    """Fractional colouring of the (K(s,t), n)-cone over G for even n, s/t = chi_f(G).

    ``mu`` is an optimal fractional colouring of G (a :class:`FractionalColouring`
    or ``(set, weight)`` pairs); it is first tightened to an exact cover.
    """
    if n < 2 or n % 2:
        raise CertificateRefusedError("even colouring certificate needs even n >= 2")
    cg = Q(chif_G) if chif_G is not None else fractional_chromatic(G).value
    if Q(s, t) != cg:
        raise CertificateRefusedError(f"s/t = {s}/{t} differs from chi_f(G) = {cg}")
    mu = _optimal_colouring_of(G, mu, cg, "mu")
    p = cone_parameters(cg, 1, n, s=s, t=t)
    K = kneser(s, t)
    subsets = kneser_vertices(s, t)
    C = generalized_cone(G, K, n)
    entries, names = [], []
    for k in range(0, n - 1, 2):
        for j in range(s):
            T = [v for v in range(K.n) if j in subsets[v]]
            Tbar = [v for v in range(K.n) if j not in subsets[v]]
            for idx, (I, wI) in enumerate(mu.entries):
                b = _SetBuilder(C)
                for v in T:
                    b.layers(I, range(0, k + 1), v)
                    b.full(range(k + 2, n - 1, 2), v)
                    b.apex(v)
                for v in Tbar:
                    b.layers(I, range(0, k + 2), v)
                    b.full(range(k + 3, n, 2), v)
                entries.append((frozenset(b.out), p.sigma[k] * wI))
                names.append(f"I[k={k},j={j},mu={idx}]")
    b = _SetBuilder(C)
    for v in range(K.n):
        b.full(range(1, n, 2), v)
    entries.append((frozenset(b.out), p.tau))
    names.append("O")
    return ColouringCertificate(C, FractionalColouring(C.graph, entries, names), p, f"K({s},{t})")


def build_colouring_certificate_odd(G: Graph, s: int, t: int, n: int, mu,
                                    chif_G=None) -> ColouringCertificate:
    """Fractional colouring of the (K(s,t), n)-cone over G for odd n, s/t <= chi_f(G).

    Uses the sets I_{k,j} (odd k), I_k (even k) and O_j with weights
    ``(sigma'_k + sigma'_{k+1}) mu(I)``, ``delta_k mu(I)`` and ``tau'/t``.
    A negative delta is kept as is; the verifier then rejects the certificate.
    """
    if n < 3 or n % 2 == 0:
        raise CertificateRefusedError("odd colouring certificate needs odd n >= 3")
    if s < 2 * t:
        raise CertificateRefusedError(f"need s >= 2t, got s={s}, t={t}")
    cg = Q(chif_G) if chif_G is not None else fractional_chromatic(G).value
    ch = Q(s, t)
    if ch > cg:
        raise OutOfTheoremScopeError(f"s/t = {ch} exceeds chi_f(G) = {cg}")
    if cg == 2:
        raise SingularParameterError("odd certificate undefined for chi_f(G) = 2")
    mu = _optimal_colouring_of(G, mu, cg, "mu")
    p = cone_parameters(cg, ch, n, s=s, t=t)
    delta = p.require_delta()
    sp = p.sigma_prime
    K = kneser(s, t)
    subsets = kneser_vertices(s, t)
    C = generalized_cone(G, K, n)
    entries, names = [], []
    for k in range(1, n - 1, 2):
        for j in range(s):
            T = [v for v in range(K.n) if j in subsets[v]]
            Tbar = [v for v in range(K.n) if j not in subsets[v]]
            for idx, (I, wI) in enumerate(mu.entries):
                b = _SetBuilder(C)
                for v in Tbar:
                    b.layers(I, range(1, k + 2), v)
                    b.full(range(k + 3, n, 2), v)
                for v in T:
                    b.layers(I, range(0, k + 1), v)
                    b.full(range(k + 2, n - 1, 2), v)
                    b.apex(v)
                entries.append((frozenset(b.out), (sp[k] + sp[k + 1]) * wI))
                names.append(f"I[k={k},j={j},mu={idx}]")
    for k in range(0, n, 2):
        for idx, (I, wI) in enumerate(mu.entries):
            b = _SetBuilder(C)
            for v in range(K.n):
                b.layers(I, range(0, k + 1), v)
                b.full(range(k + 2, n, 2), v)
            entries.append((frozenset(b.out), delta[k] * wI))
            names.append(f"I[k={k},mu={idx}]")
    for j in range(s):
        b = _SetBuilder(C)
        for v in range(K.n):
            b.full(range(1, n - 1, 2), v)
            if j in subsets[v]:
                b.apex(v)
        entries.append((frozenset(b.out), p.tau_prime / t))
        names.append(f"O[j={j}]")
    return ColouringCertificate(C, FractionalColouring(C.graph, entries, names), p, f"K({s},{t})")


# -- general H via Kneser embeddings -----------------------------------------------------

@dataclass
class KneserEmbedding:
    status: str               # "found" or "not found at cap"
    scale: int | None
    s: int
    t: int
    hom: HomomorphismMap | None


def kneser_embedding(H: Graph, s: int, t: int, max_scale: int = 3,
                     node_cap: int = 1_000_000) -> KneserEmbedding:
    """Search H -> K(s m, t m) for m = 1..max_scale."""
    for m in range(1, max_scale + 1):
        res = find_homomorphism(H, kneser(s * m, t * m), node_cap)
        if res.found:
            return KneserEmbedding("found", m, s * m, t * m, res.mapping)
    return KneserEmbedding("not found at cap", None, s, t, None)


def pullback_certificate(cert: ColouringCertificate, phi: HomomorphismMap) -> ColouringCertificate:
    """Transport a certificate on the (K, n)-cone back along ``phi: H -> K``.

    Preimages of independent sets under a homomorphism are independent, and
    every vertex inherits the coverage of its image.
    """
    n = cert.cone.heights[0]
    lift = pattern_homomorphism(cert.cone.base_graph, phi, n)
    pre: dict[int, list[int]] = {}
    for u, w in enumerate(lift.mapping):
        pre.setdefault(w, []).append(u)
    entries = [
        (frozenset(u for w in S for u in pre.get(w, ())), wt)
        for S, wt in cert.colouring.entries
    ]
    src = lift.source_cone
    return ColouringCertificate(
        src, FractionalColouring(src.graph, entries, cert.colouring.names), cert.params,
        f"pullback of {cert.pattern}",
    )


def colouring_certificate(G: Graph, H: Graph, n: int, max_scale: int = 3,
                          lp_G=None, lp_H=None) -> ColouringCertificate | KneserEmbedding:
    """Upper-bound certificate on the (H, n)-cone for any H with chi_f(H) <= chi_f(G).

    Returns the failed :class:`KneserEmbedding` if no embedding is found at cap.
    """
    lp_G = lp_G or fractional_chromatic(G)
    lp_H = lp_H or fractional_chromatic(H)
    cg, ch = lp_G.value, lp_H.value
    if ch > cg:
        raise OutOfTheoremScopeError(f"chi_f(H) = {ch} exceeds chi_f(G) = {cg}")
    ratio = cg if n % 2 == 0 else ch
    emb = kneser_embedding(H, ratio.numerator, ratio.denominator, max_scale)
    if emb.hom is None:
        return emb
    if n % 2 == 0:
        cert = build_colouring_certificate_even(G, emb.s, emb.t, n, lp_G.primal, cg)
    else:
        cert = build_colouring_certificate_odd(G, emb.s, emb.t, n, lp_G.primal, cg)
    return pullback_certificate(cert, emb.hom)


# -- ordinary chromatic number ------------------------------------------------------------

@dataclass
class UpperColouring:
    cone: ConeGraph
    colouring: list[int]
    bound: int
    k: int
    k_prime: int

    @property
    def colours_used(self) -> int:
        return len(set(self.colouring))

    def is_proper(self) -> bool:
        g = self.cone.graph
        return all(self.colouring[u] != self.colouring[v] for u, v in g.edges())


def chromatic_upper_colouring(G: Graph, H: Graph, h: Sequence[int] | int) -> UpperColouring:
    """Proper colouring of the (H, h)-cone with at most chi(G) + chi(H[X]) + 1 colours,
    X = {v : h(v) = 1}, provided chi(H - X) <= chi(G).

    Colours (0-based): base 0..k-1, apexes over X k..k+k'-1, odd inner layers
    k+k', even inner layers k-1, other apexes by a k-colouring of H - X except
    that an odd-height apex coloured k-1 moves to k+k'.
    """
    C = generalized_cone(G, H, h)
    hs = C.heights
    X = [v for v in range(H.n) if hs[v] == 1]
    Y = [v for v in range(H.n) if hs[v] > 1]
    cG = chromatic_number(G)
    k = cG.chi
    cX = chromatic_number(H.induced_subgraph(X))
    cY = chromatic_number(H.induced_subgraph(Y))
    if cY.chi > k:
        raise CertificateRefusedError(f"chi(H - X) = {cY.chi} exceeds chi(G) = {k}")
    kp = cX.chi
    col = [0] * C.n
    for idx, lab in enumerate(C.labels):
        if isinstance(lab, Inner):
            col[idx] = k + kp if lab.i % 2 else k - 1
        elif isinstance(lab, Apex):
            v = lab.v
            if hs[v] == 1:
                col[idx] = k + cX.colouring[X.index(v)]
            else:
                phi = cY.colouring[Y.index(v)]
                col[idx] = k + kp if (hs[v] % 2 and phi == k - 1) else phi
        else:
            col[idx] = cG.colouring[lab.x]
    out = UpperColouring(C, col, k + kp + 1, k, kp)
    if not out.is_proper():
        raise AssertionError("constructed colouring is not proper")
    return out
