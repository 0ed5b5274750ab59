import itertools

import pytest

from goelab.errors import BudgetExceededError
from goelab.groups import Zd
from goelab.patterns import Alphabet, BINARY, Pattern, word_to_pattern
from goelab.subshift import (
    SFTPresentation,
    SoficPresentation1D,
    determinize,
    even_shift,
    full_shift,
    golden_mean,
    hard_ball,
    irreducible,
    language_count,
    ledrappier,
    locally_admissible_count,
    mixing_gap,
    sft_to_sofic,
    sofic_compare,
    sofic_equal,
    sofic_from_json,
    sofic_to_json,
    trim,
    word_appears,
)


# definition-level membership oracles, independent of the graph machinery


def golden_ok(word: str) -> bool:
    return "11" not in word


def even_ok(word: str) -> bool:
    # every 0-run flanked by 1s on both sides must have even length
    runs = word.split("1")
    inner = runs[1:-1] if word.count("1") >= 2 else []
    return all(len(r) % 2 == 0 for r in inner)


def all_words(n):
    return ("".join(w) for w in itertools.product("01", repeat=n))


def period2():
    return SFTPresentation(
        Zd(1), BINARY, (word_to_pattern(BINARY, "00"), word_to_pattern(BINARY, "11"))
    )


def test_builtin_shapes():
    g = golden_mean()
    assert len(g.forbidden) == 1
    assert g.forbidden[0] == word_to_pattern(BINARY, "11")
    hb = hard_ball(2)
    assert len(hb.forbidden) == 2
    led = ledrappier()
    # the four odd-sum assignments on the L-shape
    assert len(led.forbidden) == 4
    assert all(sum(p.values) % 2 == 1 for p in led.forbidden)


def test_golden_counts_match_the_recurrence_and_brute_force():
    X = golden_mean()
    counts = [language_count(X, n) for n in range(1, 11)]
    assert counts[:4] == [2, 3, 5, 8]
    assert all(counts[i + 2] == counts[i + 1] + counts[i] for i in range(8))
    for n in range(1, 11):
        assert counts[n - 1] == sum(golden_ok(w) for w in all_words(n))


def test_even_counts_match_the_recurrence_and_brute_force():
    X = even_shift()
    counts = [language_count(X, n) for n in range(1, 11)]
    assert counts[:2] == [2, 4]
    assert all(counts[i + 2] == 1 + counts[i + 1] + counts[i] for i in range(8))
    for n in range(1, 11):
        assert counts[n - 1] == sum(even_ok(w) for w in all_words(n))


def test_word_appears_matches_definition():
    X = even_shift()
    assert not word_appears(X, "101")
    assert word_appears(X, "010")  # a lone 1 has no second 1 to pair with
    assert word_appears(X, "0110")
    for n in range(1, 9):
        for w in all_words(n):
            assert word_appears(X, w) == even_ok(w)


def test_full_shift_counts():
    A3 = Alphabet.of_size(3)
    X = full_shift(A3)
    assert [language_count(X, n) for n in range(4)] == [1, 3, 9, 27]


def test_period2_counts():
    X = period2()
    assert [language_count(X, n) for n in range(1, 6)] == [2, 2, 2, 2, 2]


def test_sft_compilation_presents_the_same_language():
    compiled = sft_to_sofic(golden_mean())
    assert compiled.is_essential()
    for n in range(1, 8):
        for w in all_words(n):
            assert word_appears(compiled, w) == golden_ok(w)


def test_trim_drops_stranded_vertices():
    # vertex 2 is a dead end and must disappear
    pres = SoficPresentation1D(
        BINARY, 3, ((0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 2, 1))
    )
    trimmed = trim(pres)
    assert trimmed.num_vertices == 2
    assert trimmed.is_essential()


def test_determinize_even_small_and_faithful():
    D = determinize(even_shift())
    assert D.is_deterministic()
    assert D.num_vertices <= 3
    for n in range(1, 9):
        for w in all_words(n):
            assert word_appears(D, w) == even_ok(w)


def test_determinize_preserves_language_on_golden():
    D = determinize(golden_mean())
    assert D.is_deterministic()
    for n in range(1, 9):
        for w in all_words(n):
            assert word_appears(D, w) == golden_ok(w)


def test_sofic_equal_same_language_different_presentations():
    # the 2-block and 3-block compilations present the same subshift
    two_block = sft_to_sofic(golden_mean())
    with_longer_word = SFTPresentation(
        Zd(1), BINARY, (word_to_pattern(BINARY, "11"), word_to_pattern(BINARY, "111"))
    )
    three_block = sft_to_sofic(with_longer_word)
    assert sofic_equal(two_block, three_block)


def test_sofic_compare_golden_vs_even():
    equal, only_g, only_e = sofic_compare(golden_mean(), even_shift())
    assert not equal
    assert only_e == "11"  # shortest even-shift word the golden mean forbids
    assert only_g == "101"  # shortest golden word the even shift forbids


def test_irreducible_builtins():
    assert irreducible(golden_mean())
    assert irreducible(even_shift())
    assert irreducible(period2())
    frozen = SFTPresentation(
        Zd(1), BINARY, (word_to_pattern(BINARY, "01"), word_to_pattern(BINARY, "10"))
    )
    assert not irreducible(frozen)  # {0^inf, 1^inf}: 0 and 1 cannot be joined


def test_mixing_gaps():
    gap = mixing_gap(golden_mean())
    assert gap is not None and gap <= 2
    assert mixing_gap(period2()) is None
    # the certificate for the even presentation; numerically equal to the
    # gluing radius 2 quoted for it
    assert mixing_gap(even_shift()) == 2
    assert mixing_gap(full_shift(BINARY)) == 1


def brute_locally_admissible(sft, window):
    placements = []
    group = sft.group
    cells = {g: i for i, g in enumerate(window)}
    for p in sft.forbidden:
        anchor = p.support[0]
        for g in window:
            shift = group.mul(g, group.inverse(anchor))
            spots = []
            for h in p.support:
                t = group.mul(shift, h)
                if t not in cells:
                    break
                spots.append(cells[t])
            else:
                placements.append((spots, p.values))
    count = 0
    for assign in itertools.product(range(len(sft.alphabet)), repeat=len(window)):
        if not any(
            all(assign[s] == v for s, v in zip(spots, values))
            for spots, values in placements
        ):
            count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ledrappier_counts_exhaustive(n):
    X = ledrappier()
    window = Zd(2).box((n + 1, n + 1))
    got = locally_admissible_count(X, window)
    assert got == 2 ** (2 * n + 1)
    assert got == brute_locally_admissible(X, window)


def test_hard_ball_line_window():
    X = hard_ball(1)
    window = tuple((i,) for i in range(4))
    assert locally_admissible_count(X, window) == 8  # golden-mean count |X_4|


def test_hard_ball_plane_window_vs_brute():
    X = hard_ball(2)
    window = Zd(2).box((3, 3))
    got = locally_admissible_count(X, window)
    assert got == brute_locally_admissible(X, window)


def test_full_shift_window_count():
    X = SFTPresentation(Zd(2), BINARY, (word_to_pattern(BINARY, "11"),))
    empty = SFTPresentation(Zd(2), BINARY, ())
    window = Zd(2).box((2, 3))
    assert locally_admissible_count(empty, window) == 2**6


def test_locally_admissible_budget():
    empty = SFTPresentation(Zd(2), BINARY, ())
    window = Zd(2).box((8, 8))
    with pytest.raises(BudgetExceededError):
        locally_admissible_count(empty, window, cap=1 << 10, row_budget=0)


def test_sofic_json_round_trip():
    pres = even_shift()
    obj = sofic_to_json(pres)
    assert sofic_from_json(obj) == pres
