"""Subshift presentations: forbidden-pattern SFTs and labeled-graph sofic shifts.

One-dimensional language questions are all answered on edge-labeled directed
graphs: SFTs over Z are compiled to their higher-block graphs, and every
language operation (membership, counting, determinization, equality) runs on
the trimmed essential graph, where finite walk labels are exactly the words
of the subshift's language.

Membership for Z^d SFTs with d >= 2 is exposed only as local admissibility
on finite windows (no global-extension claims); the Ledrappier builtin
carries its mod-2 linear structure, which gives it an exact window counter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import BudgetExceededError, UnsupportedGroupError
from .groups import FiniteSubset, Group, Zd
from .patterns import Alphabet, BINARY, Pattern, parse_word, render_word, word_to_pattern

DEFAULT_STATE_BUDGET = 1 << 17
DEFAULT_COUNT_CAP = 1 << 22


@dataclass(frozen=True)
class SFTPresentation:
    """A subshift of finite type given by forbidden patterns."""

    group: Group
    alphabet: Alphabet
    forbidden: Tuple[Pattern, ...]
    # Optional mod-2 structure: each entry is a support whose values must sum
    # to 0 mod 2; equivalent to forbidding the odd-sum assignments.  Enables
    # exact window counts by linear algebra (binary alphabets only).
    parity_constraints: Tuple[FiniteSubset, ...] = ()

    def __post_init__(self):
        for p in self.forbidden:
            if not p.support:
                raise ValueError("forbidden patterns need nonempty support")


@dataclass(frozen=True)
class SoficPresentation1D:
    """A finite edge-labeled directed graph presenting a Z-subshift's language."""

    alphabet: Alphabet
    num_vertices: int
    edges: Tuple[Tuple[int, int, int], ...]  # (source, target, symbol index)

    def __post_init__(self):
        for u, v, sym in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError("edge endpoint out of range")
            if not (0 <= sym < len(self.alphabet)):
                raise ValueError("edge symbol out of range")
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))

    def out_edges(self) -> List[List[Tuple[int, int]]]:
        out = [[] for _ in range(self.num_vertices)]
        for u, v, sym in self.edges:
            out[u].append((sym, v))
        return out

    def is_deterministic(self) -> bool:
        seen = set()
        for u, _, sym in self.edges:
            if (u, sym) in seen:
                return False
            seen.add((u, sym))
        return True

    def is_essential(self) -> bool:
        outs = {u for u, _, _ in self.edges}
        ins = {v for _, v, _ in self.edges}
        return all(u in outs and u in ins for u in range(self.num_vertices))


def trim(pres: SoficPresentation1D) -> SoficPresentation1D:
    """Essential part: repeatedly drop vertices missing in- or out-edges."""
    alive = set(range(pres.num_vertices))
    edges = set(pres.edges)
    changed = True
    while changed:
        changed = False
        outs = {u for u, v, _ in edges if v in alive and u in alive}
        ins = {v for u, v, _ in edges if u in alive and v in alive}
        keep = {u for u in alive if u in outs and u in ins}
        if keep != alive:
            alive = keep
            edges = {(u, v, s) for (u, v, s) in edges if u in alive and v in alive}
            changed = True
    order = sorted(alive)
    rename = {u: i for i, u in enumerate(order)}
    return SoficPresentation1D(
        pres.alphabet,
        len(order),
        tuple((rename[u], rename[v], s) for (u, v, s) in edges),
    )


# -- builtins ----------------------------------------------------------------


def full_shift(alphabet: Alphabet) -> SoficPresentation1D:
    return SoficPresentation1D(
        alphabet, 1, tuple((0, 0, s) for s in range(len(alphabet)))
    )


def golden_mean() -> SFTPresentation:
    """Binary sequences on Z with no factor 11."""
    group = Zd(1)
    return SFTPresentation(group, BINARY, (word_to_pattern(BINARY, "11"),))


def even_shift() -> SoficPresentation1D:
    """Binary sequences with an even number of 0s between consecutive 1s."""
    # vertex 0: even run position; vertex 1: mid odd run
    return SoficPresentation1D(BINARY, 2, ((0, 0, 1), (0, 1, 0), (1, 0, 0)))


def hard_ball(d: int) -> SFTPresentation:
    """No two adjacent 1s along any coordinate direction of Z^d."""
    group = Zd(d)
    forb = []
    for i in range(d):
        e_i = tuple(1 if j == i else 0 for j in range(d))
        forb.append(Pattern.from_dict(group, {group.identity: 1, e_i: 1}))
    return SFTPresentation(group, BINARY, tuple(forb))


def ledrappier() -> SFTPresentation:
    """Z^2 subshift with x(m,n) + x(m+1,n) + x(m,n+1) = 0 mod 2.

    The forbidden patterns are the 4 odd-sum assignments on the L-shape.
    """
    group = Zd(2)
    shape = ((0, 0), (1, 0), (0, 1))
    forb = []
    for vals in itertools.product((0, 1), repeat=3):
        if sum(vals) % 2 == 1:
            forb.append(Pattern.from_dict(group, dict(zip(shape, vals))))
    return SFTPresentation(group, BINARY, tuple(forb), parity_constraints=(shape,))


# -- SFT compilation over Z ----------------------------------------------------


def _forbidden_words(sft: SFTPresentation) -> List[Tuple[int, ...]]:
    a = len(sft.alphabet)
    words = set()
    for p in sft.forbidden:
        cells = [g[0] for g in p.support]
        lo, hi = min(cells), max(cells)
        width = hi - lo + 1
        fixed = {c - lo: v for c, v in zip(cells, p.values)}
        free = [i for i in range(width) if i not in fixed]
        for fill in itertools.product(range(a), repeat=len(free)):
            w = [0] * width
            for i, v in fixed.items():
                w[i] = v
            for i, v in zip(free, fill):
                w[i] = v
            words.add(tuple(w))
    return sorted(words)


def sft_to_sofic(sft: SFTPresentation, budget: int = DEFAULT_STATE_BUDGET) -> SoficPresentation1D:
    """Higher-block graph: vertices are allowed (m-1)-words, edges m-words."""
    if not isinstance(sft.group, Zd) or sft.group.d != 1:
        raise UnsupportedGroupError("graph compilation is for Z subshifts")
    a = len(sft.alphabet)
    forbidden = _forbidden_words(sft)
    m = max([1] + [len(w) for w in forbidden])
    if m == 1:
        bad = {w[0] for w in forbidden}
        edges = tuple((0, 0, s) for s in range(a) if s not in bad)
        return trim(SoficPresentation1D(sft.alphabet, 1, edges))
    if a ** (m - 1) > budget:
        raise BudgetExceededError("higher-block vertices", a ** (m - 1), budget)

    def clean(word):
        return not any(
            word[i : i + len(f)] == f
            for f in forbidden
            for i in range(len(word) - len(f) + 1)
        )

    vertices = [w for w in itertools.product(range(a), repeat=m - 1) if clean(w)]
    index = {w: i for i, w in enumerate(vertices)}
    edges = []
    for w in vertices:
        for s in range(a):
            nxt = w[1:] + (s,)
            if nxt in index and clean(w + (s,)):
                edges.append((index[w], index[nxt], s))
    return trim(SoficPresentation1D(sft.alphabet, len(vertices), tuple(edges)))


def presentation_of(X, budget: int = DEFAULT_STATE_BUDGET) -> SoficPresentation1D:
    """A trimmed essential graph for a 1D subshift given in either form."""
    if isinstance(X, SoficPresentation1D):
        return trim(X)
    if isinstance(X, SFTPresentation):
        return sft_to_sofic(X, budget)
    raise TypeError(f"not a subshift presentation: {X!r}")


# -- determinization and language operations ----------------------------------


class SubsetAutomaton:
    """Deterministic automaton for the language, start = set of all vertices.

    Words of the language correspond bijectively to paths from the start
    state, which is what counting and comparison need.
    """

    def __init__(self, states, transitions, alphabet):
        self.states = states  # tuple of sorted vertex tuples
        self.transitions = transitions  # list of dict sym -> state index
        self.alphabet = alphabet

    @property
    def start(self) -> int:
        return 0


def subset_automaton(
    pres: SoficPresentation1D, budget: int = DEFAULT_STATE_BUDGET
) -> SubsetAutomaton:
    pres = trim(pres)
    if pres.num_vertices == 0:
        return SubsetAutomaton(((),), [{}], pres.alphabet)
    step = [dict() for _ in range(pres.num_vertices)]
    for u, v, sym in pres.edges:
        step[u].setdefault(sym, set()).add(v)
    start = tuple(range(pres.num_vertices))
    states = {start: 0}
    order = [start]
    transitions = []
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            trans = {}
            for sym in range(len(pres.alphabet)):
                target = set()
                for q in state:
                    target |= step[q].get(sym, set())
                if not target:
                    continue
                key = tuple(sorted(target))
                if key not in states:
                    if len(states) >= budget:
                        raise BudgetExceededError(
                            "determinization states", len(states) + 1, budget
                        )
                    states[key] = len(order)
                    order.append(key)
                    nxt.append(key)
                trans[sym] = states[key]
            transitions.append(trans)
        frontier = nxt
    # transitions were appended in BFS order of discovery, matching `order`
    return SubsetAutomaton(tuple(order), transitions, pres.alphabet)


def word_appears(X, word, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """Exact membership of a finite word in the subshift's language (1D)."""
    pres = presentation_of(X, budget)
    if not isinstance(word, tuple) or any(not isinstance(s, int) for s in word):
        word = parse_word(pres.alphabet, word)
    step = [dict() for _ in range(pres.num_vertices)]
    for u, v, sym in pres.edges:
        step[u].setdefault(sym, set()).add(v)
    current = set(range(pres.num_vertices))
    for sym in word:
        nxt = set()
        for q in current:
            nxt |= step[q].get(sym, set())
        if not nxt:
            return False
        current = nxt
    return True


def language_count(X, n: int, budget: int = DEFAULT_STATE_BUDGET) -> int:
    """Number of admissible words of length n, by transfer over the subset DFA."""
    if n < 0:
        raise ValueError("length must be >= 0")
    auto = subset_automaton(presentation_of(X, budget), budget)
    counts = {auto.start: 1}
    for _ in range(n):
        nxt: Dict[int, int] = {}
        for state, c in counts.items():
            for sym, target in auto.transitions[state].items():
                nxt[target] = nxt.get(target, 0) + c
        counts = nxt
    return sum(counts.values())


def determinize(X, budget: int = DEFAULT_STATE_BUDGET) -> SoficPresentation1D:
    """A deterministic (right-resolving) presentation of the same language."""
    auto = subset_automaton(presentation_of(X, budget), budget)
    edges = []
    for i, trans in enumerate(auto.transitions):
        for sym, j in sorted(trans.items()):
            edges.append((i, j, sym))
    return trim(SoficPresentation1D(auto.alphabet, len(auto.states), tuple(edges)))


def _merge_symbols(A: Alphabet, B: Alphabet) -> Tuple[Alphabet, Dict[int, int], Dict[int, int]]:
    names = list(A.symbols) + [s for s in B.symbols if s not in A.symbols]
    merged = Alphabet(tuple(names))
    mapA = {i: merged.index(s) for i, s in enumerate(A.symbols)}
    mapB = {i: merged.index(s) for i, s in enumerate(B.symbols)}
    return merged, mapA, mapB


def sofic_compare(X, Y, budget: int = DEFAULT_STATE_BUDGET):
    """Language comparison of two 1D subshifts.

    Returns (equal, only_in_X, only_in_Y) where the witnesses are the
    shortest (then lexicographically least) words in one language and not
    the other, as strings, or None.
    """
    autoX = subset_automaton(presentation_of(X, budget), budget)
    autoY = subset_automaton(presentation_of(Y, budget), budget)
    merged, mapX, mapY = _merge_symbols(autoX.alphabet, autoY.alphabet)
    transX = [{mapX[s]: t for s, t in d.items()} for d in autoX.transitions]
    transY = [{mapY[s]: t for s, t in d.items()} for d in autoY.transitions]

    start = (autoX.start, autoY.start)
    seen = {start}
    frontier = [(start, ())]
    only_x = None
    only_y = None
    while frontier and (only_x is None or only_y is None):
        nxt = []
        for (sx, sy), word in frontier:
            for sym in range(len(merged)):
                tx = transX[sx].get(sym)
                ty = transY[sy].get(sym)
                if tx is None and ty is None:
                    continue
                w = word + (sym,)
                if tx is None and only_y is None:
                    only_y = w
                    continue
                if ty is None and only_x is None:
                    only_x = w
                    continue
                if tx is None or ty is None:
                    continue
                state = (tx, ty)
                if state not in seen:
                    seen.add(state)
                    nxt.append((state, w))
        frontier = nxt
    return (
        (only_x is None and only_y is None),
        None if only_x is None else render_word(merged, only_x),
        None if only_y is None else render_word(merged, only_y),
    )


def sofic_equal(X, Y, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    equal, _, _ = sofic_compare(X, Y, budget)
    return equal


# -- irreducibility and mixing -------------------------------------------------


def _reach_masks(pres: SoficPresentation1D) -> List[int]:
    """Bitmask of vertices reachable (>= 0 steps) from each vertex."""
    n = pres.num_vertices
    adj = [0] * n
    for u, v, _ in pres.edges:
        adj[u] |= 1 << v
    masks = []
    for v in range(n):
        seen = 1 << v
        frontier = [v]
        while frontier:
            nxt = []
            for q in frontier:
                new = adj[q] & ~seen
                seen |= adj[q]
                while new:
                    bit = new & -new
                    nxt.append(bit.bit_length() - 1)
                    new ^= bit
            frontier = nxt
        masks.append(seen)
    return masks


def _subset_states(pres: SoficPresentation1D, budget: int) -> List[Tuple[int, ...]]:
    return list(subset_automaton(pres, budget).states)


def irreducible(X, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """Exact: for all words u, v of the language some uwv is admissible.

    End-sets of words are the forward subset-automaton states; the sets of
    vertices from which a word is readable are the states of the reversed
    automaton; u, v can be joined iff some end vertex of u reaches some
    start vertex of v in the graph.
    """
    pres = presentation_of(X, budget)
    if pres.num_vertices == 0:
        return True
    reach = _reach_masks(pres)
    fwd = _subset_states(pres, budget)
    reversed_pres = SoficPresentation1D(
        pres.alphabet, pres.num_vertices, tuple((v, u, s) for (u, v, s) in pres.edges)
    )
    bwd = _subset_states(reversed_pres, budget)
    starts = [sum(1 << q for q in state) for state in bwd]
    for end_state in fwd:
        reachable = 0
        for q in end_state:
            reachable |= reach[q]
        if any(reachable & mask == 0 for mask in starts):
            return False
    return True


def mixing_gap(X, budget: int = DEFAULT_STATE_BUDGET) -> Optional[int]:
    """Primitivity index of the presentation graph's adjacency matrix.

    A finite value k certifies a uniform mixing gap (all-positive A^k);
    None means the matrix is not primitive.  For non-SFT sofic inputs this
    is a certificate about the given presentation.
    """
    pres = presentation_of(X, budget)
    n = pres.num_vertices
    if n == 0:
        return None
    rows = [0] * n
    for u, v, _ in pres.edges:
        rows[u] |= 1 << v
    full = (1 << n) - 1
    power = list(rows)
    wielandt = (n - 1) * (n - 1) + 1 if n > 1 else 1
    for k in range(1, wielandt + 1):
        if all(r == full for r in power):
            return k
        nxt = []
        for u in range(n):
            acc = 0
            bits = power[u]
            while bits:
                bit = bits & -bits
                acc |= rows[bit.bit_length() - 1]
                bits ^= bit
            nxt.append(acc)
        power = nxt
    return None


# -- window admissibility over Z^d ----------------------------------------------


def _parity_rank_count(sft: SFTPresentation, window: FiniteSubset) -> int:
    cells = {g: i for i, g in enumerate(window)}
    group = sft.group
    rows = []
    for shape in sft.parity_constraints:
        for g in window:
            positions = []
            for offset in shape:
                h = group.mul(g, offset)
                if h not in cells:
                    break
                positions.append(cells[h])
            else:
                row = 0
                for p in positions:
                    row ^= 1 << p
                rows.append(row)
    rank = 0
    pivots = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return 2 ** (len(window) - rank)


def _embeddings(sft: SFTPresentation, window: FiniteSubset):
    """All (positions, values) placements of forbidden patterns inside the window."""
    group = sft.group
    cells = {g: i for i, g in enumerate(window)}
    placements = []
    for p in sft.forbidden:
        anchor = p.support[0]
        for g in window:
            shift = group.mul(g, group.inverse(anchor))
            positions = []
            for h in p.support:
                t = group.mul(shift, h)
                if t not in cells:
                    break
                positions.append(cells[t])
            else:
                placements.append((tuple(positions), p.values))
    return sorted(set(placements))


def _window_rows(window: FiniteSubset):
    """Split a 2D box window into rows by the second coordinate."""
    ys = sorted({g[1] for g in window})
    xs = sorted({g[0] for g in window})
    expected = {(x, y) for x in xs for y in ys}
    if expected != set(window):
        return None
    return xs, ys


def _row_dp_count(sft: SFTPresentation, window: FiniteSubset, row_budget: int) -> Optional[int]:
    """Transfer-matrix count over rows; needs forbidden supports of height <= 2."""
    if not isinstance(sft.group, Zd) or sft.group.d != 2:
        return None
    split = _window_rows(window)
    if split is None:
        return None
    xs, ys = split
    a = len(sft.alphabet)
    if a ** len(xs) > row_budget:
        return None
    singles = []  # (dx positions, values) within one row
    pairs = []  # (row0 dx positions, row1 dx positions, values ordered)
    for p in sft.forbidden:
        py = [g[1] for g in p.support]
        if max(py) - min(py) > 1:
            return None
        base_y = min(py)
        px = [g[0] for g in p.support]
        base_x = min(px)
        rel = [(g[0] - base_x, g[1] - base_y) for g in p.support]
        width = max(r[0] for r in rel) + 1
        if width > len(xs):
            continue
        if max(py) == min(py):
            singles.append((tuple(r[0] for r in rel), p.values, width))
        else:
            pairs.append((rel, p.values, width))

    rows = list(itertools.product(range(a), repeat=len(xs)))

    def row_ok(r):
        for positions, values, width in singles:
            for off in range(len(xs) - width + 1):
                if all(r[off + dx] == v for dx, v in zip(positions, values)):
                    return False
        return True

    ok_rows = [r for r in rows if row_ok(r)]

    def pair_ok(r0, r1):
        for rel, values, width in pairs:
            for off in range(len(xs) - width + 1):
                good = False
                for (dx, dy), v in zip(rel, values):
                    cell = (r0 if dy == 0 else r1)[off + dx]
                    if cell != v:
                        good = True
                        break
                if not good:
                    return False
        return True

    counts = {r: 1 for r in ok_rows}
    for _ in range(len(ys) - 1):
        nxt = {}
        for r0, c in counts.items():
            for r1 in ok_rows:
                if pair_ok(r0, r1):
                    nxt[r1] = nxt.get(r1, 0) + c
        counts = nxt
    return sum(counts.values())


def locally_admissible_count(
    sft: SFTPresentation,
    window: FiniteSubset,
    cap: int = DEFAULT_COUNT_CAP,
    row_budget: int = 1 << 12,
) -> int:
    """Patterns on the window violating no forbidden pattern fully inside it.

    Exact counters are used where available (parity structure, two-row
    transfer); otherwise exhaustive enumeration under the cap.
    """
    window = sft.group.canon(window)
    a = len(sft.alphabet)
    if sft.parity_constraints and a == 2:
        return _parity_rank_count(sft, window)
    dp = _row_dp_count(sft, window, row_budget)
    if dp is not None:
        return dp
    total = a ** len(window)
    if total > cap:
        raise BudgetExceededError("window enumeration", total, cap)
    placements = _embeddings(sft, window)
    cells = len(window)
    if a == 2:
        checks = []
        for positions, values in placements:
            mask = 0
            want = 0
            for pos, v in zip(positions, values):
                bit = 1 << (cells - 1 - pos)
                mask |= bit
                if v:
                    want |= bit
            checks.append((mask, want))
        count = 0
        for k in range(total):
            for mask, want in checks:
                if k & mask == want:
                    break
            else:
                count += 1
        return count
    count = 0
    for assignment in itertools.product(range(a), repeat=cells):
        for positions, values in placements:
            if all(assignment[p] == v for p, v in zip(positions, values)):
                break
        else:
            count += 1
    return count


# -- JSON ----------------------------------------------------------------------


def sofic_to_json(pres: SoficPresentation1D) -> dict:
    return {
        "alphabet": list(pres.alphabet.symbols),
        "vertices": pres.num_vertices,
        "edges": [[u, v, pres.alphabet.symbols[s]] for (u, v, s) in pres.edges],
    }


def sofic_from_json(obj: dict) -> SoficPresentation1D:
    alphabet = Alphabet(tuple(obj["alphabet"]))
    edges = tuple(
        (int(u), int(v), alphabet.index(sym)) for u, v, sym in obj["edges"]
    )
    return SoficPresentation1D(alphabet, int(obj["vertices"]), edges)
