"""Exact fractional chromatic number by rational simplex.

The covering LP

    minimize  sum_I x_I   subject to   sum_{I contains v} x_I >= 1,  x >= 0

over the maximal independent sets I is solved by a two-phase revised primal
simplex with Bland's rule in exact integer/rational arithmetic (no floats).
The optimal dual prices are an optimal fractional clique.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .graph import Graph, InvalidParameterError
from .indep import (
    DEFAULT_CAP,
    IndependentSetFamily,
    TruncatedFamilyError,
    maximal_independent_sets,
)


def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(text: str | int | Fraction) -> Fraction:
    return Fraction(text)


@dataclass
class FractionalColouring:
    graph: Graph
    entries: list[tuple[frozenset[int], Fraction]]
    names: list[str] | None = None

    @property
    def weight(self) -> Fraction:
        return sum((w for _, w in self.entries), Fraction(0))

    def coverage(self) -> list[Fraction]:
        cov = [Fraction(0)] * self.graph.n
        for S, w in self.entries:
            for v in S:
                cov[v] += w
        return cov

    def to_json(self) -> list[dict]:
        out = []
        for k, (S, w) in enumerate(self.entries):
            item = {"set": sorted(S), "weight": frac_str(w)}
            if self.names:
                item["name"] = self.names[k]
            out.append(item)
        return out


@dataclass
class FractionalClique:
    graph: Graph
    weights: list[Fraction]

    @property
    def weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def of(self, S: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in S), Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {str(v): frac_str(w) for v, w in enumerate(self.weights)}


@dataclass
class LPResult:
    value: Fraction
    primal: FractionalColouring
    dual: FractionalClique
    iterations: int
    family_size: int = 0

    def to_json(self) -> dict:
        return {
            "value": frac_str(self.value),
            "primal": self.primal.to_json(),
            "dual": self.dual.to_json(),
            "iterations": self.iterations,
            "columns": self.family_size,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


# -- simplex -------------------------------------------------------------------

@dataclass
class _Tableau:
    """Fraction-free revised-simplex state for  A x - s + a = 1.

    The basis inverse is held as ``M / d`` with integer ``M`` and ``d > 0``
    (``d`` equals |det B|), and basic values as ``X / d``; pivots use the
    exact-division update of Bareiss, so no rationals appear in the loop.

    Variable numbering (Bland order): columns 0..m-1 are the set columns,
    m..m+n-1 the surplus variables, m+n..m+2n-1 the artificials.
    """
    n: int
    cols: list[list[int]]
    basis: list[int]
    M: list[list[int]]
    X: list[int]
    d: int = 1
    iterations: int = 0
    degenerate: int = 0

    @property
    def m(self) -> int:
        return len(self.cols)

    def column(self, j: int) -> dict[int, int]:
        """Sparse column j of [A | -I | I]."""
        m, n = self.m, self.n
        if j < m:
            return {v: 1 for v in self.cols[j]}
        if j < m + n:
            return {j - m: -1}
        return {j - m - n: 1}

    def ftran(self, j: int) -> list[int]:
        """``d * B^-1 a_j``."""
        col = self.column(j)
        return [sum(row[v] * a for v, a in col.items()) for row in self.M]

    def prices(self, cost) -> list[int]:
        """``d * c_B B^-1`` for 0/1 costs."""
        y = [0] * self.n
        for r, b in enumerate(self.basis):
            if cost(b):
                y = [a + c for a, c in zip(y, self.M[r])]
        return y

    def pivot(self, r: int, j: int, alpha: list[int]) -> None:
        piv, d = alpha[r], self.d
        if self.X[r] == 0:
            self.degenerate += 1
        Mr, Xr = self.M[r], self.X[r]
        for i in range(self.n):
            if i == r:
                continue
            f = alpha[i]
            if f == 0:
                self.M[i] = [a * piv // d for a in self.M[i]]
                self.X[i] = self.X[i] * piv // d
            else:
                self.M[i] = [(piv * a - f * b) // d for a, b in zip(self.M[i], Mr)]
                self.X[i] = (piv * self.X[i] - f * Xr) // d
        self.d = piv
        if piv < 0:
            self.M = [[-a for a in row] for row in self.M]
            self.X = [-x for x in self.X]
            self.d = -piv
        self.basis[r] = j
        self.iterations += 1

    def values(self) -> list[Fraction]:
        return [Fraction(x, self.d) for x in self.X]


def _entering(T: _Tableau, Y: list[int], phase: int) -> int | None:
    """Lowest-index variable with negative reduced cost (Bland)."""
    m, n, d = T.m, T.n, T.d
    basic = set(T.basis)
    set_cost = 0 if phase == 1 else d
    for j, members in enumerate(T.cols):
        if j in basic:
            continue
        if set_cost - sum(Y[v] for v in members) < 0:
            return j
    for v in range(n):
        # surplus column -e_v: reduced cost = 0 + y_v
        if m + v not in basic and Y[v] < 0:
            return m + v
    if phase == 1:
        for v in range(n):
            # artificial column e_v with cost 1
            if m + n + v not in basic and d - Y[v] < 0:
                return m + n + v
    return None


def _leaving(T: _Tableau, alpha: list[int]) -> int | None:
    best, best_r = None, None
    for r in range(T.n):
        if alpha[r] > 0:
            ratio = Fraction(T.X[r], alpha[r])
            if best is None or ratio < best or (ratio == best and T.basis[r] < T.basis[best_r]):
                best, best_r = ratio, r
    return best_r


def _run(T: _Tableau, phase: int, max_iter: int) -> None:
    m, n = T.m, T.n
    if phase == 1:
        cost = lambda j: j >= m + n  # noqa: E731
    else:
        cost = lambda j: j < m  # noqa: E731
    while True:
        if T.iterations > max_iter:
            raise RuntimeError(f"simplex exceeded {max_iter} iterations")
        j = _entering(T, T.prices(cost), phase)
        if j is None:
            return
        alpha = T.ftran(j)
        r = _leaving(T, alpha)
        if r is None:
            raise RuntimeError("covering LP reported unbounded; this cannot happen")
        T.pivot(r, j, alpha)


def solve_covering_lp(
    n: int, columns: Sequence[Sequence[int]], max_iter: int = 1_000_000
) -> tuple[dict[int, Fraction], list[Fraction], int]:
    """Minimize the number of columns (fractionally) covering every row 0..n-1.

    Returns ``(x, y, iterations)`` where ``x`` maps column index to positive
    value and ``y`` are the optimal dual prices.
    """
    cols = [list(c) for c in columns]
    covered = set().union(*map(set, cols)) if cols else set()
    if covered != set(range(n)):
        raise InvalidParameterError(f"rows {sorted(set(range(n)) - covered)} are in no column")
    m = len(cols)
    T = _Tableau(
        n=n,
        cols=cols,
        basis=[m + n + v for v in range(n)],
        M=[[int(i == k) for k in range(n)] for i in range(n)],
        X=[1] * n,
    )
    _run(T, 1, max_iter)
    if any(b >= m + n and T.X[r] != 0 for r, b in enumerate(T.basis)):
        raise RuntimeError("phase 1 left a positive artificial")
    # drive zero artificials out of the basis
    for r in range(n):
        if T.basis[r] < m + n:
            continue
        for j in range(m + n):
            if j in T.basis:
                continue
            alpha = T.ftran(j)
            if alpha[r] != 0:
                T.pivot(r, j, alpha)
                break
    _run(T, 2, max_iter)
    xb = T.values()
    x = {b: xb[r] for r, b in enumerate(T.basis) if b < m and xb[r] != 0}
    y = [Fraction(p, T.d) for p in T.prices(lambda j: j < m)]
    return x, y, T.iterations


def fractional_chromatic(
    G: Graph,
    cap: int = DEFAULT_CAP,
    family: IndependentSetFamily | None = None,
    max_iter: int = 1_000_000,
) -> LPResult:
    """Exact fractional chromatic number of G with optimal primal and dual."""
    if G.n == 0:
        raise InvalidParameterError("fractional chromatic number of the empty graph")
    if G.loops:
        raise InvalidParameterError("graph has loops; no fractional colouring exists")
    if family is None:
        family = maximal_independent_sets(G, cap)
    if family.truncated:
        raise TruncatedFamilyError(f"more than {cap} maximal independent sets; refusing")
    x, y, iters = solve_covering_lp(G.n, family.sets, max_iter)
    primal = FractionalColouring(
        G, [(frozenset(family.sets[j]), w) for j, w in sorted(x.items())]
    )
    dual = FractionalClique(G, y)
    if primal.weight != dual.weight:
        raise RuntimeError(f"duality gap: {primal.weight} vs {dual.weight}")
    return LPResult(primal.weight, primal, dual, iters, len(family))


# -- verification ----------------------------------------------------------------

@dataclass
class ColouringVerdict:
    valid: bool
    total: Fraction
    min_coverage: Fraction | None
    exact_cover: bool
    uncovered: int | None = None
    dependent_set: frozenset[int] | None = None
    negative_entry: int | None = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "total": frac_str(self.total),
            "min_coverage": None if self.min_coverage is None else frac_str(self.min_coverage),
            "exact_cover": self.exact_cover,
            "uncovered": self.uncovered,
            "dependent_set": None if self.dependent_set is None else sorted(self.dependent_set),
            "negative_entry": self.negative_entry,
        }


def verify_fractional_colouring(G: Graph, fc: FractionalColouring) -> ColouringVerdict:
    """Check supports are independent, weights nonnegative and every vertex covered to >= 1."""
    total = fc.weight
    for k, (S, w) in enumerate(fc.entries):
        if w < 0:
            return ColouringVerdict(False, total, None, False, negative_entry=k)
        if any(G.adj[v] & S for v in S):
            return ColouringVerdict(False, total, None, False, dependent_set=frozenset(S))
    cov = fc.coverage()
    low = min(cov) if cov else None
    uncovered = next((v for v, c in enumerate(cov) if c < 1), None)
    return ColouringVerdict(
        uncovered is None, total, low, all(c == 1 for c in cov), uncovered=uncovered
    )


@dataclass
class CliqueVerdict:
    valid: bool
    total: Fraction
    max_set_weight: Fraction | None
    violating_set: tuple[int, ...] | None = None
    negative_vertex: int | None = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "total": frac_str(self.total),
            "max_set_weight": None if self.max_set_weight is None else frac_str(self.max_set_weight),
            "violating_set": None if self.violating_set is None else list(self.violating_set),
            "negative_vertex": self.negative_vertex,
        }


def verify_fractional_clique(
    G: Graph,
    fq: FractionalClique | Sequence[Fraction] | Mapping[int, Fraction],
    cap: int = DEFAULT_CAP,
    family: IndependentSetFamily | None = None,
) -> CliqueVerdict:
    """Check ``nu(I) <= 1`` on every maximal independent set of G."""
    if isinstance(fq, FractionalClique):
        weights = list(fq.weights)
    elif isinstance(fq, Mapping):
        weights = [Fraction(fq.get(v, 0)) for v in range(G.n)]
    else:
        weights = [Fraction(w) for w in fq]
    total = sum(weights, Fraction(0))
    neg = next((v for v, w in enumerate(weights) if w < 0), None)
    if neg is not None:
        return CliqueVerdict(False, total, None, negative_vertex=neg)
    if family is None:
        family = maximal_independent_sets(G, cap)
    if family.truncated:
        raise TruncatedFamilyError(f"more than {cap} maximal independent sets; refusing")
    den = lcm(*(w.denominator for w in weights)) if weights else 1
    W = [int(w * den) for w in weights]
    best, arg = -1, None
    for S in family.sets:
        s = sum(W[v] for v in S)
        if s > best:
            best, arg = s, S
    top = Fraction(best, den) if arg is not None else Fraction(0)
    if top > 1:
        return CliqueVerdict(False, total, top, violating_set=arg)
    return CliqueVerdict(True, total, top)


def tighten_colouring(fc: FractionalColouring) -> FractionalColouring:
    """Remove over-coverage by shrinking supports so every vertex is covered exactly once.

    The total weight is kept unless a support shrinks to the empty set, which
    only happens when the input is not optimal. Each vertex with coverage ``1 + e`` is deleted from a weight-``e`` slice of
    the sets containing it. Subsets of independent sets stay independent.
    """
    entries = [(frozenset(S), Fraction(w)) for S, w in fc.entries if w]
    for v in range(fc.graph.n):
        excess = sum((w for S, w in entries if v in S), Fraction(0)) - 1
        if excess <= 0:
            continue
        out = []
        for S, w in entries:
            if excess > 0 and v in S:
                cut = min(w, excess)
                excess -= cut
                if w - cut:
                    out.append((S, w - cut))
                out.append((S - {v}, cut))
            else:
                out.append((S, w))
        entries = out
    merged: dict[frozenset[int], Fraction] = {}
    for S, w in entries:
        merged[S] = merged.get(S, Fraction(0)) + w
    if merged.get(frozenset(), 0):
        # only possible for a non-optimal colouring; the empty set covers nothing
        del merged[frozenset()]
    ordered = sorted(merged.items(), key=lambda kv: sorted(kv[0]))
    return FractionalColouring(fc.graph, [(S, w) for S, w in ordered])
