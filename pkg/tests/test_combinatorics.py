import itertools
import random

import pytest
from hypothesis import given, strategies as st

from qfock.combinatorics import (BlockSpec, Ordering, TruncationError, abacus_beads, as_multipartition,
                                 decode, dominance_compare, encode, enumerate_block, join_index,
                                 minimal_truncation, multipartitions, pad, partitions, render_abacus,
                                 sector_position, split_index, wedge_compare)
from qfock.theorems import is_sufficiently_large, is_sufficiently_small

GE = (Ordering.GREATER, Ordering.EQUAL)

EXAMPLE_WEDGE = (6, 3, 2, 1, -2, -4, -5, -7)
EXAMPLE_LAM = ((), (1, 1), (4,))
EXAMPLE_CHARGE = (2, 0, -2)


def test_split_index_examples():
    assert split_index(6, 2, 3) == (2, 3, 0)
    assert split_index(3, 2, 3) == (1, 2, 0)
    assert split_index(2, 2, 3) == (2, 1, 0)


def test_join_index_examples():
    assert join_index((2, 3, 0), 2, 3) == 6
    assert join_index((2, 1, 1), 2, 2) == -2
    with pytest.raises(ValueError):
        join_index((3, 1, 0), 2, 2)
    with pytest.raises(ValueError):
        join_index((1, 3, 0), 2, 2)


@given(st.integers(-10**4, 10**4), st.integers(2, 5), st.integers(1, 4))
def test_split_and_join_are_inverse(k, n, level):
    t = split_index(k, n, level)
    assert 1 <= t.c <= n and 1 <= t.d <= level
    assert join_index(t, n, level) == k


def test_sector_positions_of_the_worked_abacus():
    # relabeled positions c - n*m of each sector
    beta = {1: [], 2: [], 3: []}
    for k in EXAMPLE_WEDGE:
        d, x = sector_position(k, 2, 3)
        beta[d].append(x)
    assert beta == {1: [2, 1, 0, -1], 2: [1, 0], 3: [2, -3]}


def test_encode_worked_example():
    assert encode(EXAMPLE_LAM, EXAMPLE_CHARGE, 2) == EXAMPLE_WEDGE
    assert encode(EXAMPLE_LAM, EXAMPLE_CHARGE, 2, r=10) == EXAMPLE_WEDGE + (-8, -9)


def test_decode_worked_example():
    assert decode(EXAMPLE_WEDGE, 2, 3) == (EXAMPLE_LAM, EXAMPLE_CHARGE)
    assert decode(EXAMPLE_WEDGE + (-8, -9, -10), 2, 3) == (EXAMPLE_LAM, EXAMPLE_CHARGE)


def test_order_example_wedges():
    lam, mu, s = ((1, 1), ()), ((), (2,)), (1, -1)
    assert pad(encode(lam, s, 2), 4) == (2, 1, -1, -3)
    assert pad(encode(mu, s, 2), 4) == (3, 1, -2, -3)
    assert decode((3, 1, -2, -3), 2, 2) == (((), (2,)), (1, -1))


def test_order_example_disagreement():
    # the shifted-part order and the wedge order disagree on this pair
    lam, mu, s = ((1, 1), ()), ((), (2,)), (1, -1)
    assert dominance_compare(lam, mu, s, 2) is Ordering.GREATER
    assert dominance_compare(mu, lam, s, 2) is Ordering.LESS
    assert wedge_compare(lam, mu, s, 2) is Ordering.LESS


def test_unequal_sizes_are_incomparable():
    s = (0, 0)
    assert dominance_compare(((1,), ()), ((2,), ()), s, 2) is Ordering.INCOMPARABLE
    assert wedge_compare(((1,), ()), ((2,), ()), s, 2) is Ordering.INCOMPARABLE


def test_truncation_errors():
    with pytest.raises(TruncationError):
        encode(EXAMPLE_LAM, EXAMPLE_CHARGE, 2, r=5)
    with pytest.raises(TruncationError):
        decode((3, 3, 1), 2, 2)
    with pytest.raises(TruncationError):
        pad(EXAMPLE_WEDGE, 3)
    assert minimal_truncation(EXAMPLE_LAM, EXAMPLE_CHARGE, 2) == len(EXAMPLE_WEDGE)


def test_bad_multipartitions_are_rejected():
    with pytest.raises(ValueError):
        as_multipartition([[1, 2]])
    with pytest.raises(ValueError):
        as_multipartition([[-1]])
    with pytest.raises(ValueError):
        encode(((1,),), (0, 0), 2)


def test_partition_counts():
    assert [len(partitions(N)) for N in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert len(multipartitions(3, 2)) == 10
    assert len(multipartitions(2, 3)) == 9


CHARGES = {1: [(0,), (3,), (-2,)], 2: [(0, 0), (3, -3), (-1, 2)], 3: [(0, 0, 0), (2, 0, -2), (-1, 3, 1)]}


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("level", [1, 2, 3])
def test_encode_decode_roundtrip(n, level):
    top = {1: 8, 2: 6, 3: 4}[level]
    for s in CHARGES[level]:
        for N in range(top + 1):
            for lam in multipartitions(N, level):
                w = encode(lam, s, n)
                assert all(a > b for a, b in zip(w, w[1:]))
                assert decode(w, n, level) == (lam, s)
                assert decode(pad(w, len(w) + 2 * n * level + 1), n, level) == (lam, s)


@pytest.mark.parametrize("compare", [dominance_compare, wedge_compare])
@pytest.mark.parametrize("n,level,s", [(2, 1, (0,)), (2, 2, (1, -1)), (3, 2, (0, 2)), (2, 3, (2, 0, -2))])
def test_orders_are_partial_orders(compare, n, level, s):
    for N in range(5 if level < 3 else 4):
        lams = multipartitions(N, level)
        rel = {(a, b): compare(a, b, s, n) for a in lams for b in lams}
        for a in lams:
            assert rel[a, a] is Ordering.EQUAL
        for a, b in itertools.permutations(lams, 2):
            o = rel[a, b]
            assert o is not Ordering.EQUAL
            flipped = {Ordering.GREATER: Ordering.LESS, Ordering.LESS: Ordering.GREATER,
                       Ordering.INCOMPARABLE: Ordering.INCOMPARABLE}[o]
            assert rel[b, a] is flipped
        for a, b, c in itertools.permutations(lams, 3):
            if rel[a, b] in GE and rel[b, c] in GE:
                assert rel[a, c] in GE


def test_enumerate_block_examples():
    assert enumerate_block(BlockSpec(2, 1, (0,), 2)) == [((2,),), ((1, 1),)]
    assert enumerate_block(BlockSpec(2, 2, (0, 0), 0)) == [((), ())]
    assert enumerate_block(BlockSpec(3, 3, (1, 0, -1), 0)) == [((), (), ())]


@pytest.mark.parametrize("order,compare", [("wedge", wedge_compare), ("dominance", dominance_compare)])
@pytest.mark.parametrize("n,level,s,N", [(2, 2, (3, -3), 4), (3, 3, (0, 2, -2), 2), (2, 1, (1,), 6)])
def test_enumerate_block_is_a_linear_extension(order, compare, n, level, s, N):
    block = BlockSpec(n, level, s, N)
    seq = enumerate_block(block, order=order)
    assert sorted(seq) == sorted(multipartitions(N, level))
    for i, a in enumerate(seq):
        for b in seq[i + 1:]:
            assert compare(a, b, s, n) is not Ordering.LESS


def test_enumerate_block_accepts_a_tie_break():
    block = BlockSpec(2, 2, (0, 0), 3)
    rng = random.Random(5)
    weights = {lam: rng.random() for lam in multipartitions(3, 2)}
    seq = enumerate_block(block, tie_break=weights.get)
    for i, a in enumerate(seq):
        for b in seq[i + 1:]:
            assert wedge_compare(a, b, block.charge, 2) is not Ordering.LESS


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("level", [2, 3])
def test_large_component_is_inherited_downwards(n, level):
    """If s_j is large for lam and lam >= mu in the shifted-part order, the same holds for mu."""
    rng = random.Random(n * 10 + level)
    for _ in range(25):
        s = tuple(rng.randint(-4, 4) for _ in range(level))
        N = rng.randint(1, 4 if level == 2 else 3)
        lams = multipartitions(N, level)
        for j in range(1, level + 1):
            for lam in lams:
                if not is_sufficiently_large(s, j, lam):
                    continue
                for mu in lams:
                    if dominance_compare(lam, mu, s, n) in GE:
                        assert not mu[j - 1]
                        assert is_sufficiently_large(s, j, mu)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("level", [2, 3])
def test_small_component_forces_empty_component(n, level):
    """If s_j is small for lam, lam >= mu and mu^(j) is empty, then lam^(j) is empty."""
    rng = random.Random(n * 100 + level)
    for _ in range(25):
        N = rng.randint(1, 4 if level == 2 else 3)
        j = rng.randint(1, level)
        s = [rng.randint(-3, 3) for _ in range(level)]
        s[j - 1] = min(x for i, x in enumerate(s, 1) if i != j) - N - rng.randint(0, 2) if level > 1 else s[0]
        s = tuple(s)
        assert is_sufficiently_small(s, j, N)
        lams = multipartitions(N, level)
        for lam in lams:
            for mu in lams:
                if not mu[j - 1] and dominance_compare(lam, mu, s, n) in GE:
                    assert not lam[j - 1]


def test_abacus_shows_the_worked_bead_pattern():
    text = render_abacus(EXAMPLE_WEDGE, 2, 3)
    beads = abacus_beads(text)
    shown = set(range(-17, 7))
    assert beads == {k for k in shown if k in EXAMPLE_WEDGE or k < EXAMPLE_WEDGE[-1]}
    lines = text.splitlines()
    # top row m=3 fully occupied, bottom row m=0 carries beads 1, 2, 3 and 6
    assert lines[1].endswith("m=3") and lines[-1].endswith("m=0")
    assert lines[-1].split("||")[0].split() == ["(1)", "(2)", "|", "(3)", "4", "|", "5", "(6)"]
    assert lines[-1].split("||")[1].split()[:8] == ["(1)", "(2)", "|", "(1)", "2", "|", "1", "(2)"]
