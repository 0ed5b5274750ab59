"""Exact decisions for cellular automata over Z: surjectivity, injectivity,
pre-injectivity, with re-verified witnesses.

Everything runs on the de Bruijn lift of a sofic presentation of the domain:
lift states are length-(W-1) edge paths, lift edges consume one domain symbol
and emit one output symbol, so paths of length n correspond to domain words
of length n + W - 1 and their output labels spell the image word.

Pre-injectivity and injectivity are decided on the product of the lift with
itself restricted to equal output labels.  Edges where the two consumed
domain symbols agree are "sync" edges.  A diamond exists iff some unequal-
symbol edge lies between a state with a left-infinite sync tail and a state
with a right-infinite sync tail (the tails realize the shared part of two
almost-equal configurations); injectivity drops the sync requirement on the
tails.  This works verbatim for nondeterministic presentations, where a
configuration does not determine its presentation path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .automaton import CellularAutomaton, minimal_memory_set
from .errors import BudgetExceededError, GroupMismatchError
from .groups import Zd
from .patterns import Pattern, parse_word, render_word, values_to_index
from .subshift import (
    SoficPresentation1D,
    full_shift,
    presentation_of,
    sofic_compare,
    trim,
    word_appears,
)

DEFAULT_PAIR_BUDGET = 1 << 22


def normalize_interval(ca: CellularAutomaton) -> CellularAutomaton:
    """Reduce to the minimal memory set, then pad it to its spanning interval."""
    if not isinstance(ca.group, Zd) or ca.group.d != 1:
        raise GroupMismatchError("the 1D engine needs a cellular automaton over Z")
    minimal = minimal_memory_set(ca)
    kept = [g[0] for g in minimal.memory_set]
    cells = kept or [0]
    lo, hi = min(cells), max(cells)
    interval = tuple((c,) for c in range(lo, hi + 1))
    if interval == minimal.memory_set:
        return minimal
    a = len(minimal.input_alphabet)
    positions = [c - lo for c in kept]  # where the kept cells sit in the interval

    def rule(window):
        return minimal.table[values_to_index(a, [window[p] for p in positions])]

    return CellularAutomaton.from_local_rule(
        minimal.group, minimal.input_alphabet, minimal.output_alphabet, interval, rule
    )


def slide(ca: CellularAutomaton, word: Sequence[int]) -> Tuple[int, ...]:
    """Sliding evaluation of an interval-memory CA on a finite word."""
    w = len(ca.memory_set)
    return tuple(ca.local_rule(word[i : i + w]) for i in range(len(word) - w + 1))


class DeBruijnLift:
    """Window lift of a domain presentation under an interval-memory CA.

    ``out[s]`` lists ``(domain_symbol, output_symbol, target_state)`` sorted,
    so every traversal below is deterministic.
    """

    def __init__(self, ca: CellularAutomaton, pres: SoficPresentation1D):
        if ca.input_alphabet != pres.alphabet:
            raise ValueError("domain alphabet does not match the automaton input")
        self.ca = ca
        self.width = len(ca.memory_set)
        pres = trim(pres)
        edges = pres.edges
        w = self.width
        if w == 1:
            self.num_states = pres.num_vertices
            self.out: List[List[Tuple[int, int, int]]] = [
                [] for _ in range(self.num_states)
            ]
            for u, v, sym in edges:
                self.out[u].append((sym, ca.local_rule((sym,)), v))
        else:
            paths = [(i,) for i in range(len(edges))]
            for _ in range(w - 2):
                paths = [
                    p + (j,)
                    for p in paths
                    for j in range(len(edges))
                    if edges[p[-1]][1] == edges[j][0]
                ]
            index = {p: i for i, p in enumerate(paths)}
            self.num_states = len(paths)
            self.out = [[] for _ in paths]
            for p, src in index.items():
                head = edges[p[-1]][1]
                window = tuple(edges[i][2] for i in p)
                for j, (u, _, sym) in enumerate(edges):
                    if u != head:
                        continue
                    target = index[p[1:] + (j,)]
                    self.out[src].append((sym, ca.local_rule(window + (sym,)), target))
        for lst in self.out:
            lst.sort()


def image_presentation(
    ca: CellularAutomaton, X=None, budget: int = DEFAULT_PAIR_BUDGET
) -> SoficPresentation1D:
    """A presentation of the image subshift tau(X) (X defaults to the full shift)."""
    ca = normalize_interval(ca)
    pres = presentation_of(X) if X is not None else full_shift(ca.input_alphabet)
    lift = DeBruijnLift(ca, pres)
    edges = []
    for src, lst in enumerate(lift.out):
        for _, out_sym, target in lst:
            edges.append((src, target, out_sym))
    return trim(SoficPresentation1D(ca.output_alphabet, lift.num_states, tuple(edges)))


# -- verdicts ------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    answer: bool
    witness: Optional[dict] = None
    detail: Tuple[Tuple[str, object], ...] = ()

    def to_json(self) -> dict:
        out = {"answer": self.answer, "witness": self.witness}
        out.update(dict(self.detail))
        return out


# -- surjectivity ---------------------------------------------------------------


def decide_surjective(
    ca: CellularAutomaton, X=None, Y=None, budget: int = DEFAULT_PAIR_BUDGET
) -> Verdict:
    """True iff tau(X) = Y; on False the witness is the shortest word of Y's
    language missing from the image language (a Garden of Eden word)."""
    image = image_presentation(ca, X, budget)
    codomain = presentation_of(Y) if Y is not None else full_shift(ca.output_alphabet)
    equal, only_img, only_cod = sofic_compare(image, codomain, budget)
    if only_img is not None:
        raise ValueError(
            f"image is not contained in the codomain (extra word {only_img!r})"
        )
    if equal:
        return Verdict(True)
    return Verdict(False, {"type": "goe_word", "word": only_cod})


# -- the pair graph --------------------------------------------------------------


class _PairGraph:
    """Product of the lift with itself, restricted to equal output labels."""

    def __init__(self, lift: DeBruijnLift, budget: int = DEFAULT_PAIR_BUDGET):
        n = lift.num_states
        if n * n > budget:
            raise BudgetExceededError("pair-graph states", n * n, budget)
        self.n = n
        # edge entry: (target_pair, sym1, sym2); output equality already holds
        self.out: List[List[Tuple[int, int, int]]] = [[] for _ in range(n * n)]
        for i in range(n):
            for j in range(n):
                src = i * n + j
                for a1, o1, t1 in lift.out[i]:
                    for a2, o2, t2 in lift.out[j]:
                        if o1 == o2:
                            self.out[src].append((t1 * n + t2, a1, a2))
        for lst in self.out:
            lst.sort(key=lambda e: (e[1], e[2], e[0]))

    def sync_inf_sets(self) -> Tuple[set, set]:
        """States with a left-infinite (resp. right-infinite) path of
        equal-symbol pair edges."""
        total = self.n * self.n
        preds: List[List[int]] = [[] for _ in range(total)]
        succs: List[List[int]] = [[] for _ in range(total)]
        for src, lst in enumerate(self.out):
            for tgt, a1, a2 in lst:
                if a1 == a2:
                    preds[tgt].append(src)
                    succs[src].append(tgt)
        return self._prune(preds), self._prune(succs)

    @staticmethod
    def _prune(feeders: List[List[int]]) -> set:
        alive = set(range(len(feeders)))
        changed = True
        while changed:
            changed = False
            dead = [s for s in alive if not any(f in alive for f in feeders[s])]
            if dead:
                alive -= set(dead)
                changed = True
        return alive

    def reach_from(self, sources: set) -> set:
        seen = set(sources)
        frontier = sorted(seen)
        while frontier:
            nxt = []
            for s in frontier:
                for tgt, _, _ in self.out[s]:
                    if tgt not in seen:
                        seen.add(tgt)
                        nxt.append(tgt)
            frontier = sorted(nxt)
        return seen

    def reverse_adjacency(self) -> List[List[int]]:
        rev: List[List[int]] = [[] for _ in range(self.n * self.n)]
        for src, lst in enumerate(self.out):
            for tgt, _, _ in lst:
                rev[tgt].append(src)
        return rev

    def coreach_to(self, targets: set) -> set:
        rev = self.reverse_adjacency()
        seen = set(targets)
        frontier = sorted(seen)
        while frontier:
            nxt = []
            for s in frontier:
                for src in rev[s]:
                    if src not in seen:
                        seen.add(src)
                        nxt.append(src)
            frontier = sorted(nxt)
        return seen

    def first_diff_edge(self, sources: set, cotargets: set):
        """Canonically least (src, sym1, sym2, tgt) unequal-symbol edge from
        ``sources`` into ``cotargets``."""
        for src in sorted(sources):
            for tgt, a1, a2 in self.out[src]:
                if a1 != a2 and tgt in cotargets:
                    return src, a1, a2, tgt
        return None


def _canonical_pred_map(pg: _PairGraph, alive: set, sync_only: bool):
    """state -> (canonical predecessor, symbol pair), both endpoints alive."""
    choice = {}
    for src, lst in enumerate(pg.out):
        if src not in alive:
            continue
        for tgt, a1, a2 in lst:
            if sync_only and a1 != a2:
                continue
            if tgt in alive:
                key = (a1, a2, src)
                if tgt not in choice or key < choice[tgt][0]:
                    choice[tgt] = (key, (src, (a1, a2)))
    return {k: v for k, (_, v) in choice.items()}


def _canonical_succ_map(pg: _PairGraph, alive: set, sync_only: bool):
    choice = {}
    for src, lst in enumerate(pg.out):
        if src not in alive:
            continue
        for tgt, a1, a2 in lst:
            if sync_only and a1 != a2:
                continue
            if tgt in alive:
                key = (a1, a2, tgt)
                if src not in choice or key < choice[src][0]:
                    choice[src] = (key, (tgt, (a1, a2)))
    return {k: v for k, (_, v) in choice.items()}


def _walk_back_to_cycle(pred_map, start):
    """Returns (cycle_steps, stem_steps) in forward order, the stem ending at
    ``start``; steps are (sym1, sym2) pairs."""
    chain = [start]
    labels = []
    seen = {start: 0}
    while True:
        prev, syms = pred_map[chain[-1]]
        labels.append(syms)
        if prev in seen:
            k = seen[prev]
            return labels[k:][::-1], labels[:k][::-1]
        seen[prev] = len(chain)
        chain.append(prev)


def _walk_forward_to_cycle(succ_map, start):
    """Returns (cycle_steps, stem_steps) in forward order, the stem starting
    at ``start``."""
    chain = [start]
    labels = []
    seen = {start: 0}
    while True:
        nxt, syms = succ_map[chain[-1]]
        labels.append(syms)
        if nxt in seen:
            k = seen[nxt]
            return labels[k:], labels[:k]
        seen[nxt] = len(chain)
        chain.append(nxt)


def _bridge(pg: _PairGraph, sources: set, goals: set):
    """Shortest canonical pair-edge path from sources to goals; returns
    (goal_state, steps)."""
    hit = sorted(sources & goals)
    if hit:
        return hit[0], []
    parent = {s: None for s in sorted(sources)}
    frontier = sorted(sources)
    while frontier:
        nxt = []
        for s in frontier:
            for tgt, a1, a2 in pg.out[s]:
                if tgt in parent:
                    continue
                parent[tgt] = (s, (a1, a2))
                if tgt in goals:
                    steps = []
                    cur = tgt
                    while parent[cur] is not None:
                        prev, syms = parent[cur]
                        steps.append(syms)
                        cur = prev
                    return tgt, steps[::-1]
                nxt.append(tgt)
        frontier = sorted(nxt)
    return None, None


def _pair_syms(steps: Sequence[Tuple[int, int]]):
    return tuple(a for a, _ in steps), tuple(b for _, b in steps)


# -- pre-injectivity ---------------------------------------------------------------


def decide_preinjective(
    ca: CellularAutomaton, X=None, budget: int = DEFAULT_PAIR_BUDGET
) -> Verdict:
    """True iff there is no diamond (two distinct almost-equal configurations
    of the domain with the same image)."""
    ca = normalize_interval(ca)
    pres = presentation_of(X) if X is not None else full_shift(ca.input_alphabet)
    lift = DeBruijnLift(ca, pres)
    pg = _PairGraph(lift, budget)
    left_inf, right_inf = pg.sync_inf_sets()
    if not left_inf or not right_inf:
        return Verdict(True, detail=(("note", "empty domain"),))
    from_left = pg.reach_from(left_inf)
    to_right = pg.coreach_to(right_inf)
    found = pg.first_diff_edge(from_left, to_right)
    if found is None:
        return Verdict(True)
    src, a1, a2, tgt = found

    # Witness: ... (left cycle)^inf stem bridge [a1|a2] bridge stem (right cycle)^inf
    anchor = _nearest_in(pg, left_inf, src)
    pred_map = _canonical_pred_map(pg, left_inf, sync_only=True)
    lcycle, lstem = _walk_back_to_cycle(pred_map, anchor)
    _, pre_steps = _bridge(pg, {anchor}, {src})
    goal, mid_steps = _bridge(pg, {tgt}, right_inf)
    succ_map = _canonical_succ_map(pg, right_inf, sync_only=True)
    rcycle, rstem = _walk_forward_to_cycle(succ_map, goal)

    alphabet = ca.input_alphabet
    c1, c2 = _pair_syms((pre_steps or []) + [(a1, a2)] + (mid_steps or []))
    witness = {
        "type": "diamond",
        "left_period": render_word(alphabet, _pair_syms(lcycle)[0]),
        "left_pad": render_word(alphabet, _pair_syms(lstem)[0]),
        "center": [render_word(alphabet, c1), render_word(alphabet, c2)],
        "right_pad": render_word(alphabet, _pair_syms(rstem)[0]),
        "right_period": render_word(alphabet, _pair_syms(rcycle)[0]),
    }
    verified = verify_diamond_witness(ca, pres, witness)
    return Verdict(False, witness, detail=(("witness_verified", verified),))


def _nearest_in(pg: _PairGraph, targets: set, state: int) -> int:
    """Canonical state of ``targets`` from which ``state`` is reachable."""
    if state in targets:
        return state
    rev = pg.reverse_adjacency()
    seen = {state}
    frontier = [state]
    while frontier:
        nxt = []
        for s in frontier:
            for prev in sorted(rev[s]):
                if prev in targets:
                    return prev
                if prev not in seen:
                    seen.add(prev)
                    nxt.append(prev)
        frontier = sorted(nxt)
    raise RuntimeError("inconsistent pair graph: no anchor found")


def verify_diamond_witness(ca: CellularAutomaton, X, witness: dict) -> bool:
    """Re-verify a diamond witness by direct sliding evaluation.

    The two assembled words share their flanks, so every output position is
    either inside the compared interior or has its window in the common
    flank; interior equality is therefore conclusive.
    """
    ca = normalize_interval(ca)
    pres = presentation_of(X)
    alphabet = ca.input_alphabet
    w = len(ca.memory_set)
    c1 = parse_word(alphabet, witness["center"][0])
    c2 = parse_word(alphabet, witness["center"][1])
    if c1 == c2 or len(c1) != len(c2):
        return False
    pad = pres.num_vertices * w + w
    lp = parse_word(alphabet, witness["left_period"])
    rp = parse_word(alphabet, witness["right_period"])
    flank_l = lp * max(2, pad // max(1, len(lp)) + 1) + parse_word(
        alphabet, witness["left_pad"]
    )
    flank_r = parse_word(alphabet, witness["right_pad"]) + rp * max(
        2, pad // max(1, len(rp)) + 1
    )
    w1 = flank_l + c1 + flank_r
    w2 = flank_l + c2 + flank_r
    if w1 == w2:
        return False
    if not (word_appears(pres, w1) and word_appears(pres, w2)):
        return False
    return slide(ca, w1) == slide(ca, w2)


# -- injectivity --------------------------------------------------------------------


def decide_injective(
    ca: CellularAutomaton, X=None, budget: int = DEFAULT_PAIR_BUDGET
) -> Verdict:
    """True iff no two distinct domain configurations share an image."""
    ca = normalize_interval(ca)
    pres = presentation_of(X) if X is not None else full_shift(ca.input_alphabet)
    lift = DeBruijnLift(ca, pres)
    pg = _PairGraph(lift, budget)
    total = pg.n * pg.n
    incoming: List[List[int]] = [[] for _ in range(total)]
    outgoing: List[List[int]] = [[] for _ in range(total)]
    for src, lst in enumerate(pg.out):
        for tgt, _, _ in lst:
            incoming[tgt].append(src)
            outgoing[src].append(tgt)
    alive = set(range(total))
    changed = True
    while changed:
        changed = False
        dead = [
            s
            for s in alive
            if not any(p in alive for p in incoming[s])
            or not any(q in alive for q in outgoing[s])
        ]
        if dead:
            alive -= set(dead)
            changed = True
    found = None
    for src in sorted(alive):
        for tgt, a1, a2 in pg.out[src]:
            if a1 != a2 and tgt in alive:
                found = (src, a1, a2, tgt)
                break
        if found:
            break
    if found is None:
        return Verdict(True)
    src, a1, a2, tgt = found
    pred_map = _canonical_pred_map(pg, alive, sync_only=False)
    succ_map = _canonical_succ_map(pg, alive, sync_only=False)
    lcycle, lstem = _walk_back_to_cycle(pred_map, src)
    rcycle, rstem = _walk_forward_to_cycle(succ_map, tgt)
    alphabet = ca.input_alphabet

    def both(steps):
        s1, s2 = _pair_syms(steps)
        return [render_word(alphabet, s1), render_word(alphabet, s2)]

    witness = {
        "type": "config_pair",
        "left_period": both(lcycle),
        "left_pad": both(lstem),
        "center": both([(a1, a2)]),
        "right_pad": both(rstem),
        "right_period": both(rcycle),
    }
    verified = verify_injectivity_witness(ca, pres, witness)
    return Verdict(False, witness, detail=(("witness_verified", verified),))


def verify_injectivity_witness(ca: CellularAutomaton, X, witness: dict) -> bool:
    """Empirical re-check of an eventually periodic equal-image pair: both
    words admissible, words distinct, all comparable outputs equal over
    several repetitions of both periods."""
    ca = normalize_interval(ca)
    pres = presentation_of(X)
    alphabet = ca.input_alphabet
    w = len(ca.memory_set)

    def pair(key):
        return (
            parse_word(alphabet, witness[key][0]),
            parse_word(alphabet, witness[key][1]),
        )

    lp1, lp2 = pair("left_period")
    lpad1, lpad2 = pair("left_pad")
    c1, c2 = pair("center")
    rpad1, rpad2 = pair("right_pad")
    rp1, rp2 = pair("right_period")
    if len(lp1) != len(lp2) or len(rp1) != len(rp2) or len(lpad1) != len(lpad2):
        return False
    pad = pres.num_vertices * w + w
    reps_l = max(2, pad // max(1, len(lp1)) + 1)
    reps_r = max(2, pad // max(1, len(rp1)) + 1)
    s1 = lp1 * reps_l + lpad1 + c1 + rpad1 + rp1 * reps_r
    s2 = lp2 * reps_l + lpad2 + c2 + rpad2 + rp2 * reps_r
    if s1 == s2 or len(s1) != len(s2):
        return False
    if not (word_appears(pres, s1) and word_appears(pres, s2)):
        return False
    return slide(ca, s1) == slide(ca, s2)


# -- mutual erasability on subshift domains ------------------------------------------


def me_check_subshift(
    ca: CellularAutomaton,
    X,
    p1: Pattern,
    p2: Pattern,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> bool:
    """Exact ME test over a sofic domain for patterns on a common interval:
    some pair of domain configurations carries p1/p2 and agrees elsewhere
    (MEP-1), and every such pair has equal images (MEP-2)."""
    if p1.support != p2.support:
        raise ValueError("ME patterns need a common support")
    cells = [g[0] for g in p1.support]
    if cells != list(range(cells[0], cells[0] + len(cells))):
        raise ValueError("the subshift ME check needs an interval support")
    ca = normalize_interval(ca)
    pres = presentation_of(X)
    lift = DeBruijnLift(ca, pres)
    pg = _PairGraph(lift, budget)
    left_inf, right_inf = pg.sync_inf_sets()
    n = lift.num_states
    lift_out = lift.out

    def step(frontier, want1, want2):
        nxt: Dict[int, set] = {}
        for state, flags in frontier.items():
            i, j = divmod(state, n)
            for a1, o1, t1 in lift_out[i]:
                if want1 is not None and a1 != want1:
                    continue
                for a2, o2, t2 in lift_out[j]:
                    if want2 is not None and a2 != want2:
                        continue
                    if want1 is None and a1 != a2:
                        continue
                    bad = o1 != o2
                    got = nxt.setdefault(t1 * n + t2, set())
                    for f in flags:
                        got.add(f or bad)
        return nxt

    frontier: Dict[int, set] = {s: {False} for s in sorted(left_inf)}
    for v1, v2 in zip(p1.values, p2.values):
        frontier = step(frontier, v1, v2)
        if not frontier:
            return False  # the patterns do not jointly embed: (MEP-1) fails
    for _ in range(len(ca.memory_set) - 1):
        frontier = step(frontier, None, None)
        if not frontier:
            return False
    clean = any(s in right_inf and False in flags for s, flags in frontier.items())
    dirty = any(s in right_inf and True in flags for s, flags in frontier.items())
    return clean and not dirty


# -- preimage counting ----------------------------------------------------------------


def count_preimages(ca: CellularAutomaton, word, cap: int = 1 << 24) -> int:
    """Number of words of length |w| + |S| - 1 mapping onto w by sliding
    evaluation over the full shift (brute-force, used as an oracle)."""
    ca = normalize_interval(ca)
    target = parse_word(ca.output_alphabet, word)
    w = len(ca.memory_set)
    a = len(ca.input_alphabet)
    length = len(target) + w - 1
    total = a**length
    if total > cap:
        raise BudgetExceededError("preimage enumeration", total, cap)
    count = 0
    for candidate in itertools.product(range(a), repeat=length):
        if slide(ca, candidate) == target:
            count += 1
    return count


def preimage_histogram(ca: CellularAutomaton, length: int, cap: int = 1 << 24):
    """count_preimages for every output word of the given length at once:
    enumerate all inputs of length ``length + W - 1`` and histogram their
    images."""
    ca = normalize_interval(ca)
    w = len(ca.memory_set)
    a = len(ca.input_alphabet)
    total = a ** (length + w - 1)
    if total > cap:
        raise BudgetExceededError("preimage enumeration", total, cap)
    counts: Dict[Tuple[int, ...], int] = {}
    for candidate in itertools.product(range(a), repeat=length + w - 1):
        img = slide(ca, candidate)
        counts[img] = counts.get(img, 0) + 1
    return counts
