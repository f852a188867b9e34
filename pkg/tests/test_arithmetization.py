"""The prime-exponent encoding: bijectivity, order transport, ceilings."""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from young_defined import arithmetization as A
from young_defined.partitions import (EMPTY, ResourceLimit,
                                      enumerate_universe, from_parts, leq,
                                      parse_partition)

p = parse_partition
partitions = st.lists(st.integers(1, 9), max_size=9).map(from_parts)


def test_nth_prime():
    assert [A.nth_prime(i) for i in range(1, 9)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert A.nth_prime(25) == 97
    with pytest.raises(ValueError):
        A.nth_prime(0)


def test_encode_frozen_examples():
    assert A.encode(EMPTY) == 0
    assert A.encode(p('[1]')) == 1
    assert A.encode(p('2[1]')) == 2
    assert A.encode(p('3[1]')) == 4
    assert A.encode(p('[2]')) == 3
    assert A.encode(p('(3,1)')) == 10
    assert A.encode(p('2[3]+[1]')) == 50


def test_trivial_partitions_are_powers_of_two():
    for m in range(1, 20):
        code = A.encode(from_parts([1] * m))
        assert code == 2 ** (m - 1)
        assert A.decode(code) == from_parts([1] * m)


def test_decode_frozen_examples():
    assert A.decode(0) == EMPTY
    assert A.decode(1) == p('[1]')
    assert A.decode(50) == p('2[3]+[1]')
    assert A.decode(3 * 5 * 7) == p('(4,3,2)')


@settings(deadline=None)
@given(partitions)
def test_decode_encode_roundtrip(sigma):
    code = A.encode(sigma)
    assume(code <= A.DECODE_CEILING)
    assert A.decode(code) == sigma


@given(st.integers(0, 10 ** 6))
def test_encode_decode_roundtrip(n):
    assert A.encode(A.decode(n)) == n


def test_encoding_is_injective_on_a_window():
    universe = enumerate_universe(12)
    codes = {}
    for sigma in universe:
        code = A.encode(sigma)
        assert code not in codes
        codes[code] = sigma


def test_decode_ceiling():
    with pytest.raises(ResourceLimit):
        A.decode(A.DECODE_CEILING + 1)


def test_primexp():
    n = 2 ** 3 * 5 ** 2
    assert A.primexp(1, 3, n)
    assert A.primexp(3, 2, n)
    assert A.primexp(2, 0, n)
    assert not A.primexp(1, 2, n)
    with pytest.raises(ValueError):
        A.primexp(1, 1, 0)


def test_ord_via_encoding_matches_leq():
    universe = enumerate_universe(9)
    for sigma in universe:
        for pi in universe:
            assert A.ord_via_encoding(A.encode(sigma), A.encode(pi)) \
                == leq(sigma, pi)


@settings(deadline=None)
@given(partitions, partitions)
def test_pullbacks_agree_with_code_arithmetic(rho, sigma):
    a, b = A.encode(rho), A.encode(sigma)
    assume(a * b <= A.DECODE_CEILING and a + b + 1 <= A.DECODE_CEILING)
    assert A.add_pullback(rho, sigma, A.decode(a + b))
    assert A.mult_pullback(rho, sigma, A.decode(a * b))
    assert not A.add_pullback(rho, sigma, A.decode(a + b + 1))


def test_totalize():
    assert A.totalize(EMPTY) == EMPTY
    assert A.totalize(p('[2]')) == p('[3]')
    assert A.totalize(p('2[3]+[1]')) == p('[50]')
    with pytest.raises(ResourceLimit):
        A.totalize(from_parts([30] * 30))
