"""Entropy of subshifts and images: window counts along Folner sequences,
exact Perron values for 1D sofic shifts, and the entropy inequalities as
finite-scale checks.

Conventions: natural logarithm everywhere (reports also render log2); the
1D Folner window F_n is {0..n}, i.e. words of length n+1.  Estimates are the
finite quantities log|X_{F_n}| / |F_n|; the exact spectral value is computed
separately and no claim is made about abstract limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .automaton import CellularAutomaton
from .decide1d import image_presentation, normalize_interval
from .errors import UnsupportedGroupError
from .groups import Zd
from .patterns import Alphabet
from .subshift import (
    SFTPresentation,
    SoficPresentation1D,
    determinize,
    language_count,
    locally_admissible_count,
    presentation_of,
)


@dataclass(frozen=True)
class EntropyEstimate:
    """Window-count series: rows (n, count, cells, estimate in nats)."""

    rows: Tuple[Tuple[int, int, int, float], ...]
    method: str  # "count" | "perron"

    def final(self) -> float:
        return self.rows[-1][3]

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "rows": [
                {
                    "n": n,
                    "count": count,
                    "cells": cells,
                    "nats": nats,
                    "bits": nats / math.log(2),
                }
                for n, count, cells, nats in self.rows
            ],
        }


def _window_count(X, n: int) -> Tuple[int, int]:
    """(count, cells) of X on its Folner window F_n."""
    if isinstance(X, SoficPresentation1D):
        return language_count(X, n + 1), n + 1
    if isinstance(X, SFTPresentation):
        group = X.group
        if not isinstance(group, Zd):
            raise UnsupportedGroupError("entropy windows need Z^d")
        if group.d == 1:
            return language_count(X, n + 1), n + 1
        window = group.box((n + 1,) * group.d)
        return locally_admissible_count(X, window), (n + 1) ** group.d
    raise TypeError(f"not a subshift presentation: {X!r}")


def pattern_count_entropy(X, ns: Sequence[int]) -> EntropyEstimate:
    """Exact window counts and the per-cell log estimates along F_n.

    1D counts are exact language counts; for d >= 2 the count is the local
    admissibility count, exact for the builtins that carry structure.
    """
    rows = []
    for n in ns:
        count, cells = _window_count(X, n)
        rows.append((n, count, cells, math.log(count) / cells))
    return EntropyEstimate(tuple(rows), "count")


# -- Perron value for 1D ------------------------------------------------------


def _strongly_connected_components(n: int, adj: List[List[int]]) -> List[List[int]]:
    """Tarjan, iterative; components in a deterministic order."""
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = [1]
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(adj[v])):
                u = adj[v][i]
                if not visited[u]:
                    work[-1] = (v, i + 1)
                    work.append((u, 0))
                    recurse = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if recurse:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _spectral_radius(matrix: List[List[int]], tol: float) -> float:
    """Largest eigenvalue of a nonnegative irreducible integer matrix with a
    certified bracket: power iteration on M + I, min/max Collatz ratios."""
    n = len(matrix)
    if n == 0:
        return 0.0
    v = [1.0] * n
    for _ in range(100000):
        w = [
            sum(matrix[i][j] * v[j] for j in range(n)) + v[i]
            for i in range(n)
        ]
        ratios = [w[i] / v[i] for i in range(n)]
        lo, hi = min(ratios), max(ratios)
        norm = max(w)
        v = [x / norm for x in w]
        if hi - lo < tol:
            return (lo + hi) / 2.0 - 1.0
    raise RuntimeError("power iteration failed to bracket the spectral radius")


def perron_entropy(X, tol: float = 1e-9) -> float:
    """log of the spectral radius of the determinized, trimmed presentation.

    On a non-strongly-connected graph the value is the maximum over the
    strongly connected components.  Returns -inf for an empty language.
    """
    pres = determinize(presentation_of(X))
    n = pres.num_vertices
    if n == 0:
        return float("-inf")
    counts = [[0] * n for _ in range(n)]
    adj: List[List[int]] = [[] for _ in range(n)]
    for u, v, _ in pres.edges:
        if counts[u][v] == 0:
            adj[u].append(v)
        counts[u][v] += 1
    best = 0.0
    for comp in _strongly_connected_components(n, adj):
        if len(comp) == 1:
            u = comp[0]
            if counts[u][u] == 0:
                continue
        sub = [[counts[u][v] for v in comp] for u in comp]
        radius = _spectral_radius(sub, tol)
        best = max(best, radius)
    if best <= 0.0:
        return float("-inf")
    return math.log(best)


# -- inequalities -----------------------------------------------------------------


@dataclass(frozen=True)
class ImageEntropyReport:
    rows: Tuple[Tuple[int, int, int], ...]  # (n, image count, domain count on F_n S)
    violations: int
    domain_perron: Optional[float]
    image_perron: Optional[float]

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {
            "rows": [
                {"n": n, "image_count": ic, "domain_count_on_FnS": dc}
                for n, ic, dc in self.rows
            ],
            "violations": self.violations,
            "domain_perron": self.domain_perron,
            "image_perron": self.image_perron,
        }


def image_entropy_check(
    ca: CellularAutomaton, X=None, ns: Sequence[int] = range(1, 11)
) -> ImageEntropyReport:
    """Verify |tau(X)_{F_n}| <= |X_{F_n S}| for each n and compare the exact
    Perron values of image and domain (Z only)."""
    ca = normalize_interval(ca)
    from .subshift import full_shift

    domain = presentation_of(X) if X is not None else full_shift(ca.input_alphabet)
    image = image_presentation(ca, domain)
    w = len(ca.memory_set)
    rows = []
    violations = 0
    for n in ns:
        img_count = language_count(image, n + 1)
        dom_count = language_count(domain, n + w)  # F_n S is an interval of n+w cells
        rows.append((n, img_count, dom_count))
        if img_count > dom_count:
            violations += 1
    return ImageEntropyReport(
        tuple(rows),
        violations,
        perron_entropy(domain),
        perron_entropy(image),
    )


@dataclass(frozen=True)
class SurjectionSweepReport:
    trials: int
    all_non_surjective: bool
    witnesses: Tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "all_non_surjective": self.all_non_surjective,
            "witnesses": list(self.witnesses),
        }


def no_surjection_bigger_alphabet_check(
    a: int, b: int, trials: int = 25, seed: int = 0, max_memory: int = 3
) -> SurjectionSweepReport:
    """Random CA from an a-symbol to a b-symbol full shift with a < b are
    never surjective; any counterexample is a fatal bug."""
    if not a < b:
        raise ValueError("need a < b")
    import random

    from .decide1d import decide_surjective
    from .patterns import Alphabet

    rng = random.Random(seed)
    A, B = Alphabet.of_size(a), Alphabet.of_size(b)
    group = Zd(1)
    witnesses = []
    ok = True
    for _ in range(trials):
        width = rng.randint(1, max_memory)
        lo = rng.randint(-1, 0)
        S = tuple((c,) for c in range(lo, lo + width))
        table = tuple(rng.randrange(b) for _ in range(a**width))
        ca = CellularAutomaton(group, A, B, S, table)
        verdict = decide_surjective(ca)
        if verdict.answer:
            ok = False
            witnesses.append("SURJECTIVE(bug)")
        else:
            witnesses.append(verdict.witness["word"])
    return SurjectionSweepReport(trials, ok, tuple(witnesses))


@dataclass(frozen=True)
class TilingBoundReport:
    applicable: bool
    rows: Tuple[Tuple[int, int, float, float], ...]  # (n, |T|, lhs nats, rhs nats)
    holds: bool

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "holds": self.holds,
            "rows": [
                {"n": n, "tiles": t, "log_count": lhs, "bound": rhs}
                for n, t, lhs, rhs in self.rows
            ],
        }


def tiling_entropy_bound_check(
    X, E, ns: Sequence[int]
) -> TilingBoundReport:
    """Finite-scale tiling inequality: with T the greedy tile centers inside
    F_n, check log|X_{F_n}| <= |F_n^*| log|A| + sum_t log|X_{tE}|.

    Degenerate when the per-tile hypothesis X_E != A^E fails (full shift):
    reported as not applicable.
    """
    from .goe_search import greedy_tiling

    if isinstance(X, SoficPresentation1D):
        group = Zd(1)
        alphabet = X.alphabet
    else:
        group = X.group
        alphabet = X.alphabet
    E = group.canon(E)
    a = len(alphabet)

    def count_on(window) -> int:
        if isinstance(X, SoficPresentation1D) or (
            isinstance(X, SFTPresentation) and group.d == 1
        ):
            cells = sorted(g[0] for g in window)
            # windows here are intervals; count by word length
            return language_count(X, len(cells))
        return locally_admissible_count(X, window)

    tile_count = count_on(E)
    if tile_count >= a ** len(E):
        return TilingBoundReport(False, (), True)
    rows = []
    holds = True
    for n in ns:
        if group.d == 1:
            window = tuple((i,) for i in range(n + 1))
        else:
            window = group.box((n + 1,) * group.d)
        T, _ = greedy_tiling(group, E, window)
        tiled = set()
        for t in T:
            tiled.update(group.mul(t, e) for e in E)
        f_star = len(window) - len(tiled)
        lhs = math.log(count_on(window))
        rhs = f_star * math.log(a)
        for t in T:
            rhs += math.log(count_on(group.translate(t, E)))
        rows.append((n, len(T), lhs, rhs))
        if lhs > rhs + 1e-12:
            holds = False
    return TilingBoundReport(True, tuple(rows), holds)
