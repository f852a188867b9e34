"""Exact partition arithmetic: construction, order, covers, conjugation,
lattice operations, enumeration, and the text forms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from young_defined.partitions import (EMPTY, MAX_ENUMERATION_CARD, Partition,
                                      PartitionError, ResourceLimit, conjugate,
                                      enumerate_level, enumerate_universe,
                                      factorial_partition, from_parts, join,
                                      leq, lower_covers, meet,
                                      parse_partition, partition_count,
                                      render, upper_covers)

UNI = enumerate_universe(9)


def parts_list(max_part=8, max_len=8):
    return st.lists(st.integers(1, max_part), max_size=max_len)


partitions = parts_list().map(from_parts)


def leq_by_expansion(sigma, pi):
    """Independent order oracle: compare the expanded part sequences."""
    a, b = sigma.parts(), pi.parts()
    return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))


# --- construction and canonical form

def test_runs_validation():
    Partition(((3, 2), (1, 1)))
    for runs in [((1, 1), (2, 1)),       # sizes increasing
                 ((2, 1), (2, 1)),       # sizes repeated
                 ((2, 0),),              # zero multiplicity
                 ((0, 2),),              # zero size
                 ((2, -1),)]:
        with pytest.raises(PartitionError):
            Partition(runs)


def test_from_parts_sorts_and_groups():
    assert from_parts([1, 3, 3, 2]) == Partition(((3, 2), (2, 1), (1, 1)))
    assert from_parts([]) == EMPTY
    with pytest.raises(PartitionError):
        from_parts([2, 0])


@given(parts_list())
def test_from_parts_is_order_insensitive(parts):
    assert from_parts(parts) == from_parts(sorted(parts))


@given(partitions)
def test_cached_attributes(pi):
    assert pi.card == sum(pi.parts())
    assert pi.length == len(pi.parts())
    assert pi.largest == (pi.parts()[0] if pi.parts() else 0)
    for n in range(1, pi.largest + 2):
        assert pi.multiplicity(n) == pi.parts().count(n)
        assert pi.has_part(n) == (n in pi.parts())


# --- the order

def test_leq_examples():
    p = parse_partition
    assert leq(p('0'), p('[1]'))
    assert leq(p('(2,1)'), p('(3,1)'))
    assert not leq(p('(1,1,1)'), p('(3,1)'))   # too many rows
    assert not leq(p('(3,)'), p('(2,2)'))      # first row too wide


@given(partitions, partitions)
def test_leq_matches_componentwise_expansion(sigma, pi):
    assert leq(sigma, pi) == leq_by_expansion(sigma, pi)


@given(partitions)
def test_leq_reflexive(pi):
    assert leq(pi, pi)


@given(partitions, partitions)
def test_leq_antisymmetric(sigma, pi):
    if leq(sigma, pi) and leq(pi, sigma):
        assert sigma == pi


@given(partitions, partitions, partitions)
def test_leq_transitive(a, b, c):
    if leq(a, b) and leq(b, c):
        assert leq(a, c)


# --- covers

def brute_lower_covers(pi, universe):
    return {s for s in universe if s.card == pi.card - 1 and leq(s, pi)}


def test_lower_covers_match_brute_force():
    for pi in UNI:
        assert set(lower_covers(pi)) == brute_lower_covers(pi, UNI)


def test_lower_covers_one_per_run():
    p = parse_partition
    assert set(lower_covers(p('2[3]+[1]'))) == {p('[3]+[2]+[1]'), p('2[3]')}
    assert lower_covers(EMPTY) == set()


def test_upper_covers_match_brute_force():
    inner = enumerate_universe(8)
    for pi in inner:
        expected = {t for t in UNI if t.card == pi.card + 1 and leq(pi, t)}
        assert set(upper_covers(pi, UNI)) == expected


def test_upper_covers_need_next_level():
    top = parse_partition('[9]')
    with pytest.raises(ResourceLimit):
        upper_covers(top, UNI)


def test_cover_count_is_runs_plus_one():
    for pi in enumerate_universe(8):
        assert len(upper_covers(pi, UNI)) == len(pi.runs) + 1
        assert len(lower_covers(pi)) == len(pi.runs)


# --- conjugation

def test_conjugate_examples():
    p = parse_partition
    assert conjugate(p('(3,1)')) == p('(2,1,1)')
    assert conjugate(p('(2,2)')) == p('(2,2)')
    assert conjugate(EMPTY) == EMPTY


@given(partitions)
def test_conjugate_involution(pi):
    assert conjugate(conjugate(pi)) == pi
    assert conjugate(pi).card == pi.card


@given(partitions, partitions)
def test_conjugate_is_an_order_automorphism(sigma, pi):
    assert leq(sigma, pi) == leq(conjugate(sigma), conjugate(pi))


@given(partitions)
def test_conjugate_swaps_length_and_largest(pi):
    assert conjugate(pi).largest == pi.length
    assert conjugate(pi).length == pi.largest


# --- meet and join

@given(partitions, partitions)
def test_meet_join_bounds(sigma, pi):
    lower = meet(sigma, pi)
    upper = join(sigma, pi)
    assert leq(lower, sigma) and leq(lower, pi)
    assert leq(sigma, upper) and leq(pi, upper)


def test_meet_join_are_tightest():
    elems = enumerate_universe(6).elements
    for sigma in elems:
        for pi in elems:
            lower, upper = meet(sigma, pi), join(sigma, pi)
            for tau in elems:
                if leq(tau, sigma) and leq(tau, pi):
                    assert leq(tau, lower)
                if leq(sigma, tau) and leq(pi, tau):
                    assert leq(upper, tau)


def test_meet_join_examples():
    p = parse_partition
    assert meet(p('(3,1)'), p('(2,2)')) == p('(2,1)')
    assert join(p('(3,1)'), p('(2,2)')) == p('(3,2)')


# --- enumeration

def test_level_4_order_is_frozen():
    assert [pi.parts() for pi in enumerate_level(4)] == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_level_sizes_match_pentagonal_oracle():
    for n, level in enumerate(UNI.levels):
        assert len(level) == partition_count(n)


def test_partition_count_known_values():
    known = {0: 1, 1: 1, 5: 7, 10: 42, 20: 627, 25: 1958, 40: 37338,
             50: 204226}
    for n, value in known.items():
        assert partition_count(n) == value


def test_enumeration_ceiling():
    with pytest.raises(ResourceLimit):
        enumerate_universe(MAX_ENUMERATION_CARD + 1)


def test_universe_lookup():
    for i, pi in enumerate(UNI.elements):
        assert UNI.ordinal(pi) == i
    assert UNI.ordinal_cutoff(4) == sum(partition_count(n) for n in range(5))
    assert parse_partition('(2,1)') in UNI
    assert len(UNI) == len(UNI.elements)


def test_universe_bit_caches_agree_with_leq():
    small = enumerate_universe(7)
    down, up = small.down_bits(), small.up_bits()
    for i, sigma in enumerate(small.elements):
        for j, pi in enumerate(small.elements):
            below = bool(down[j] >> i & 1)
            above = bool(up[i] >> j & 1)
            assert below == above == leq(sigma, pi)


def test_factorial_partition():
    assert factorial_partition(0) == EMPTY
    assert factorial_partition(1) == parse_partition('[1]')
    assert factorial_partition(4) == parse_partition('(4,3,2,1)')


# --- text forms

def test_render_examples():
    p = parse_partition
    assert render(EMPTY) == '0'
    assert render(p('(6,6,5)')) == '2[6]+[5]'
    assert render(p('(1,1)')) == '2[1]'


@given(partitions)
def test_render_parse_roundtrip(pi):
    assert parse_partition(render(pi)) == pi


def test_parse_tolerates_unsorted_and_repeated_terms():
    p = parse_partition
    assert p('[1]+[1]') == p('2[1]')
    assert p('[1]+[3]+2[3]') == p('3[3]+[1]')
    assert p(' (6, 6, 5) ') == p('2[6]+[5]')
    assert p('(2,3)') == p('(3,2)')
    assert p('(3,)') == p('[3]')
    assert p('()') == EMPTY


def test_parse_rejects_garbage():
    for text in ['', '[0]', '0[2]', 'x', '[1]+', '[1]-[1]', '(1,x)']:
        with pytest.raises(PartitionError):
            parse_partition(text)
