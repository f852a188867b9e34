"""The prime-exponent encoding of partitions into the natural numbers.

The empty partition maps to 0 and the trivial partition m[1] to
2^(m-1); every other partition maps to the product over its runs of
nthPrime(partSize)^multiplicity.  Powers of two are exactly the images
of trivial partitions (any other partition has a part of size >= 2 and
hence an odd prime factor), which is what makes the map a bijection.

Everything here is exact arbitrary-precision arithmetic; the only
ceilings are the documented runtime guards on decode and totalize.
"""

from .partitions import EMPTY, Partition, ResourceLimit, leq

# decode refuses to factor composite inputs above this
DECODE_CEILING = 10 ** 9
# largest prime whose index we are willing to sieve for
PRIME_VALUE_CEILING = 2 * 10 ** 7
# totalize refuses to build totals taller than this
TOTALIZE_CEILING = 10 ** 12
# below this, decode uses a smallest-prime-factor table
_SPF_LIMIT = 10 ** 6

_primes = [2, 3, 5, 7, 11, 13]
_prime_index = {p: i + 1 for i, p in enumerate(_primes)}
_sieve_limit = 13


def _extend_sieve(limit):
    """Grow the shared prime list to cover all primes <= limit."""
    global _primes, _prime_index, _sieve_limit
    if limit <= _sieve_limit:
        return
    if limit > PRIME_VALUE_CEILING:
        raise ResourceLimit('prime sieve ceiling %d exceeded (wanted %d)'
                            % (PRIME_VALUE_CEILING, limit))
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b'\x00\x00'
    i = 2
    while i * i <= limit:
        if flags[i]:
            flags[i * i::i] = b'\x00' * len(flags[i * i::i])
        i += 1
    _primes = [i for i in range(limit + 1) if flags[i]]
    _prime_index = {p: i + 1 for i, p in enumerate(_primes)}
    _sieve_limit = limit


def nth_prime(i):
    """The i-th prime, 1-indexed: nth_prime(1) = 2."""
    if i < 1:
        raise ValueError('prime indices start at 1')
    while len(_primes) < i:
        _extend_sieve(max(2 * _sieve_limit, 100))
    return _primes[i - 1]


def _index_of_prime(p):
    """The 1-based index of a known prime p, sieving out to it if needed."""
    if p > _sieve_limit:
        _extend_sieve(max(p, 2 * _sieve_limit))
    return _prime_index[p]


def encode(sigma):
    """The numeric code of a partition.

    0 for the empty partition, 2^(m-1) for m[1], and otherwise the
    product of nthPrime(partSize)^multiplicity over the runs.
    """
    if sigma.card == 0:
        return 0
    if sigma.largest == 1:
        return 2 ** (sigma.length - 1)
    value = 1
    for n, m in sigma.runs:
        value *= nth_prime(n) ** m
    return value


_spf = None


def _spf_table():
    """Lazily built smallest-prime-factor table for fast small decodes."""
    global _spf
    if _spf is None:
        table = [0] * (_SPF_LIMIT + 1)
        p = 2
        while p * p <= _SPF_LIMIT:
            if table[p] == 0:
                for q in range(p * p, _SPF_LIMIT + 1, p):
                    if table[q] == 0:
                        table[q] = p
            p += 1
        _spf = table
    return _spf


def _factorize(n):
    """Prime factorization of n >= 2 as a dict prime -> exponent."""
    out = {}
    if n <= _SPF_LIMIT:
        table = _spf_table()
        while n > 1:
            p = table[n] or n
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return out
    if n > DECODE_CEILING:
        raise ResourceLimit('decode ceiling %d exceeded: %d' % (DECODE_CEILING, n))
    root = int(n ** 0.5) + 2
    _extend_sieve(max(root, _sieve_limit))
    for p in _primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def decode(n):
    """The unique partition whose code is n.

    0 is the empty partition; a pure power 2^k is the trivial (k+1)[1];
    anything else reads its prime factorization as runs, the i-th prime
    carrying parts of size i.
    """
    if n < 0:
        raise ValueError('codes are non-negative, got %r' % (n,))
    if n == 0:
        return EMPTY
    if n & (n - 1) == 0:
        return Partition(((1, n.bit_length()),))
    runs = []
    for p, e in _factorize(n).items():
        runs.append((_index_of_prime(p), e))
    runs.sort(reverse=True)
    return Partition(runs)


def primexp(i, m, n):
    """Does the i-th prime divide n with exponent exactly m?"""
    if n < 1:
        raise ValueError('primexp needs n >= 1, got %r' % (n,))
    p = nth_prime(i)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e == m


def ord_via_encoding(m, n):
    """The lattice order read through the encoding: decode both, compare."""
    return leq(decode(m), decode(n))


def add_pullback(rho, sigma, pi):
    """Addition pulled back through the encoding: #rho + #sigma = #pi."""
    return encode(rho) + encode(sigma) == encode(pi)


def mult_pullback(rho, sigma, pi):
    """Multiplication pulled back through the encoding: #rho * #sigma = #pi."""
    return encode(rho) * encode(sigma) == encode(pi)


def totalize(sigma):
    """The total partition whose cardinality is the code of sigma."""
    code = encode(sigma)
    if code == 0:
        return EMPTY
    if code > TOTALIZE_CEILING:
        raise ResourceLimit('totalize ceiling %d exceeded: %d'
                            % (TOTALIZE_CEILING, code))
    return Partition(((code, 1),))
