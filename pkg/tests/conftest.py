"""Shared worked-example automata used across test modules."""

import pytest

from goelab.automaton import CellularAutomaton
from goelab.groups import Zd
from goelab.patterns import Alphabet, BINARY, word_to_pattern
from goelab.subshift import SFTPresentation

Z = Zd(1)
A3 = Alphabet.of_size(3)


def make_golden_even_ca() -> CellularAutomaton:
    """The golden-mean-to-even-shift code: 00 -> 1, 01/10 -> 0 (11 unused)."""
    table = {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1}
    return CellularAutomaton.from_local_rule(
        Z, BINARY, BINARY, ((0,), (1,)), lambda y: table[tuple(y)]
    )


def make_fiorenzi_even_ca() -> CellularAutomaton:
    """Width-5 rule fixing the even shift: 1 on 000*, 111*, and 00100."""

    def rule(y):
        if y[:3] in ((0, 0, 0), (1, 1, 1)) or tuple(y) == (0, 0, 1, 0, 0):
            return 1
        return 0

    return CellularAutomaton.from_local_rule(
        Z, BINARY, BINARY, tuple((c,) for c in range(5)), rule
    )


def make_fiorenzi_ternary_sft() -> SFTPresentation:
    """Ternary SFT forbidding 01 and 02: nonzero tails may only end in 0s."""
    return SFTPresentation(
        Z, A3, (word_to_pattern(A3, "01"), word_to_pattern(A3, "02"))
    )


def make_fiorenzi_ternary_ca() -> CellularAutomaton:
    """Memory {-1,0}: copies the cell unless it closes a nonzero run."""

    def rule(y):
        prev, cur = y
        if cur == 0 and prev in (1, 2):
            return prev
        return cur

    return CellularAutomaton.from_local_rule(Z, A3, A3, ((-1,), (0,)), rule)


@pytest.fixture
def golden_even_ca():
    return make_golden_even_ca()


@pytest.fixture
def fiorenzi_even_ca():
    return make_fiorenzi_even_ca()


@pytest.fixture
def fiorenzi_ternary():
    return make_fiorenzi_ternary_ca(), make_fiorenzi_ternary_sft()
