import math
import random

import pytest

from locfree import core
from locfree.core import GROUP, SEMIGROUP, Letter, Syllable

import wordref

F1, F2, F3 = Letter(1), Letter(2), Letter(3)

N_CASES = 2000  # the acceptance suite reruns these invariants at >= 10^4


def random_word(rng, n, max_len, signed=True):
    length = rng.randrange(max_len + 1)
    signs = (1, -1) if signed else (1,)
    return [(rng.randint(1, n), rng.choice(signs)) for _ in range(length)]


# --- push_letter -----------------------------------------------------------


def test_push_single_letter():
    h = core.push_letter(core.empty_heap(3), F1)
    assert h.columns[0] == ((1, 1),)
    assert h.length == 1


def test_push_cancels_inverse():
    h = core.heap_from_word([F1, F1.inverse()], 3)
    assert h.is_empty


def test_push_no_cancel_under_cover():
    # column-1 top is not in the roof once column 2 is higher, so the
    # inverse letter lands instead of cancelling: K(f1 f2 f1^-1) = 3
    h = core.heap_from_word([F1, F2, F1.inverse()], 3)
    assert h.length == 3
    assert wordref.reduced_length([(1, 1), (2, 1), (1, -1)]) == 3


def test_push_rejects_bad_letters():
    h = core.empty_heap(3)
    with pytest.raises(ValueError):
        core.push_letter(h, Letter(4))
    with pytest.raises(ValueError):
        core.push_letter(h, Letter(1, 0))
    with pytest.raises(ValueError):
        core.push_letter(core.empty_heap(3, SEMIGROUP), F1.inverse())


def test_semigroup_never_cancels():
    h = core.heap_from_word([F1] * 5, 3, SEMIGROUP)
    assert h.length == 5
    assert [lvl for lvl, _ in h.columns[0]] == [1, 2, 3, 4, 5]


# --- heap_from_word --------------------------------------------------------


def test_commute_then_cancel():
    h = core.heap_from_word([F1, F3, F1.inverse()], 3)
    assert h.length == 1
    assert core.canonical_key(h) == core.canonical_key(core.heap_from_word([F3], 3))


def test_levels_f1_f2_f1():
    h = core.heap_from_word([F1, F2, F1], 3)
    assert [lvl for lvl, _ in h.columns[0]] == [1, 3]
    assert [lvl for lvl, _ in h.columns[1]] == [2]
    assert h.columns[2] == ()


def test_commuting_inputs_same_heap():
    a = core.heap_from_word([F2, F3, F1], 3)
    b = core.heap_from_word([F2, F1, F3], 3)
    assert a == b


# --- normal_form_readout ---------------------------------------------------


def test_readout_succession_order():
    w = core.normal_form_readout(core.heap_from_word([F2, F1, F3], 3))
    assert w.index_sequence() == (2, 1, 3)
    # the other linearization of the same heap is not a normal form
    bad = core.NormalWord((Syllable(2, 1), Syllable(3, 1), Syllable(1, 1)), 3)
    with pytest.raises(ValueError):
        core.validate_normal_word(bad)


def test_readout_empty():
    w = core.normal_form_readout(core.empty_heap(4))
    assert w.syllables == ()
    assert w.length == 0


def test_readout_merges_syllables():
    w = core.normal_form_readout(core.heap_from_word([F1, F1, F2], 3))
    assert w.syllables == (Syllable(1, 2), Syllable(2, 1))


def test_readout_negative_syllable():
    w = core.normal_form_readout(core.heap_from_word([F1, F2, F1.inverse()], 3))
    assert w.syllables == (Syllable(1, 1), Syllable(2, 1), Syllable(1, -1))
    assert w.length == 3


# --- roof_of ---------------------------------------------------------------


def test_roof_examples():
    assert core.roof_of(core.empty_heap(3)).size == 0
    r = core.roof_of(core.heap_from_word([F1, F3], 3))
    assert r.columns() == (1, 3)
    r = core.roof_of(core.heap_from_word([F1, F2], 3))
    assert r.columns() == (2,)
    assert 2 in r and 1 not in r


def test_roof_single_column():
    # n=1: the lone column is the entire roof whenever nonempty
    h = core.heap_from_word([F1, F1], 1)
    assert core.roof_of(h).columns() == (1,)


# --- canonical_key ---------------------------------------------------------


def test_key_golden_bytes():
    h = core.heap_from_word([F1, F2, F1], 3)
    assert core.canonical_key(h).hex() == (
        "03000000020000000100000001030000000101000000020000000100000000"
    )
    assert core.canonical_key(core.empty_heap(2)).hex() == "020000000000000000000000"


def test_key_distinguishes():
    k = core.canonical_key
    assert k(core.heap_from_word([F1, F3], 3)) == k(core.heap_from_word([F3, F1], 3))
    assert k(core.heap_from_word([F1], 3)) != k(core.heap_from_word([F1.inverse()], 3))
    assert k(core.heap_from_word([F1, F2], 3)) != k(core.heap_from_word([F2, F1], 3))


# --- succession table ------------------------------------------------------


@pytest.mark.parametrize(
    "a,allowed",
    [(1, {2, 3}), (2, {1, 3}), (3, {2})],
)
def test_succession_table_n3(a, allowed):
    assert {b for b in range(1, 4) if core.succession_allowed(3, a, b)} == allowed


def test_degenerate_n1():
    h = core.heap_from_word([F1, F1, F1, F1.inverse(), F1.inverse()], 1)
    assert h.length == 1
    assert core.normal_form_readout(h).syllables == (Syllable(1, 1),)


# --- randomized invariants -------------------------------------------------


def test_round_trip_random():
    rng = random.Random(101)
    for _ in range(N_CASES):
        n = rng.randint(1, 8)
        signed = rng.random() < 0.5
        mode = GROUP if signed else rng.choice([GROUP, SEMIGROUP])
        word = random_word(rng, n, 200 if rng.random() < 0.02 else 12, signed)
        h = core.heap_from_word(word, n, mode)
        core.validate_heap(h)
        w = core.normal_form_readout(h)
        assert w.length == h.length
        assert core.heap_from_word(w.letters(), n, mode) == h


def test_cancellation_random():
    rng = random.Random(202)
    for _ in range(N_CASES):
        n = rng.randint(1, 6)
        h = core.heap_from_word(random_word(rng, n, 10), n)
        g = Letter(rng.randint(1, n), rng.choice((1, -1)))
        assert core.push_letter(core.push_letter(h, g), g.inverse()) == h


def test_commutation_random():
    rng = random.Random(303)
    for _ in range(N_CASES):
        n = rng.randint(3, 6)
        word = random_word(rng, n, 10)
        p = rng.randrange(max(1, len(word) - 1))
        if len(word) < 2 or abs(word[p][0] - word[p + 1][0]) < 2:
            continue
        swapped = word[:p] + [word[p + 1], word[p]] + word[p + 2:]
        assert core.heap_from_word(word, n) == core.heap_from_word(swapped, n)


def test_reduced_length_matches_rewriting():
    rng = random.Random(404)
    for _ in range(400):
        n = rng.randint(1, 4)
        word = random_word(rng, n, 8)
        h = core.heap_from_word(word, n)
        assert h.length == wordref.reduced_length(word)


def test_equality_matches_rewriting():
    rng = random.Random(505)
    for _ in range(300):
        n = rng.randint(2, 4)
        a = random_word(rng, n, 6)
        b = random_word(rng, n, 6)
        ha = core.heap_from_word(a, n)
        hb = core.heap_from_word(b, n)
        assert (core.canonical_key(ha) == core.canonical_key(hb)) == (
            wordref.same_element(a, b)
        )


def test_roof_bounds_random():
    rng = random.Random(606)
    for _ in range(N_CASES):
        n = rng.randint(1, 9)
        h = core.heap_from_word(random_word(rng, n, 30), n)
        roof = core.roof_of(h)
        cols = roof.columns()
        assert all(b - a >= 2 for a, b in zip(cols, cols[1:]))
        assert roof.size <= math.ceil((n + 1) / 2)
        if not h.is_empty:
            assert roof.size >= 1


def test_roof_is_where_inverses_shorten():
    # marked columns are exactly those where the inverse of the top
    # color shortens the word, and there cancellation equals naive
    # top-cell removal; everywhere else every push grows the heap
    rng = random.Random(707)
    for _ in range(500):
        n = rng.randint(2, 6)
        h = core.heap_from_word(random_word(rng, n, 12), n)
        roof = core.roof_of(h)
        for i in range(1, n + 1):
            col = h.columns[i - 1]
            shrinkers = [
                s for s in (1, -1)
                if core.push_letter(h, Letter(i, s)).length == h.length - 1
            ]
            if i in roof:
                assert shrinkers == [-col[-1][1]]
                stripped = core.ColoredHeap(
                    h.n, h.mode,
                    h.columns[: i - 1] + (col[:-1],) + h.columns[i:],
                )
                core.validate_heap(stripped)
                assert core.push_letter(h, Letter(i, -col[-1][1])) == stripped
            else:
                assert shrinkers == []


def test_cell_count_vs_word_length():
    rng = random.Random(808)
    for _ in range(N_CASES):
        n = rng.randint(1, 6)
        word = random_word(rng, n, 12, signed=False)
        h = core.heap_from_word(word, n, SEMIGROUP)
        assert h.length == len(word)
        g = core.heap_from_word(random_word(rng, n, 12), n, GROUP)
        assert g.length <= 12


def test_semigroup_equality_is_swap_equality():
    rng = random.Random(909)
    for _ in range(300):
        n = rng.randint(2, 4)
        a = random_word(rng, n, 7, signed=False)
        b = random_word(rng, n, 7, signed=False)
        ha = core.heap_from_word(a, n, SEMIGROUP)
        hb = core.heap_from_word(b, n, SEMIGROUP)
        assert (core.canonical_key(ha) == core.canonical_key(hb)) == (
            wordref.same_element(a, b)
        )
