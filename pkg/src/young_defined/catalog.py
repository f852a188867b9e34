"""The catalog of definable predicates over Young's lattice.

Every entry is a CharacterizationPair: a structural oracle that decides
the predicate directly from run-length data, and an independently coded
characterization built from order comparisons against rectangles,
staircases and witness partitions.  The harness certifies that the two
agree on bounded sweeps; nothing in this module assumes they do.

Characterizations that quantify over "all partitions" are evaluated by
support reduction: the quantifier's precedent pins down the finitely
many candidate witnesses (often exactly one), which are constructed in
place instead of swept from an enumerated universe.  Literal sweep
twins (``*_sweep``) implement the same conditions by brute force over a
Universe and exist so the tests can certify the reduction itself at
small bounds.
"""

from .partitions import (EMPTY, Partition, ResourceLimit, from_parts, leq,
                         lower_covers, factorial_partition)


class DomainError(ValueError):
    """An argument tuple falls outside a predicate's declared domain."""


def rectangle(mult, size):
    """The partition with `mult` parts of size `size`; either 0 gives the empty one."""
    if mult == 0 or size == 0:
        return EMPTY
    return Partition(((size, mult),))


def total(n):
    """The total partition [n] (empty when n = 0)."""
    return rectangle(1, n) if n else EMPTY


def strictly_less(sigma, pi):
    return sigma != pi and leq(sigma, pi)


# ---------------------------------------------------------------------------
# simple shape predicates

def is_total(pi):
    """At most one part."""
    return pi.length <= 1


def char_total(pi):
    """Total iff the two-rows partition does not fit inside pi."""
    return not leq(Partition(((1, 2),)), pi)


def is_trivial(pi):
    """Every part has size 1."""
    return pi.largest <= 1


def char_trivial(pi):
    """Trivial iff the single part of size two does not fit inside pi."""
    return not leq(Partition(((2, 1),)), pi)


def is_rectangular(pi):
    """All parts share one size (the empty partition counts)."""
    return len(pi.runs) <= 1


def char_rectangular(pi):
    """Rectangular iff pi has at most one lower cover."""
    return len(lower_covers(pi)) <= 1


def has_distinct_parts(pi):
    """No part size is repeated."""
    return all(m == 1 for _, m in pi.runs)


def char_distinct_parts(pi, universe=None):
    """Distinct parts via maximal rectangles: whenever s[p] fits maximally
    in the p direction (s[p] <= pi but s[p+1] is not), one more row must
    not fit either.

    Quantified rectangles are built in place; s runs below the length of
    pi and p up to its largest part.  The optional universe only asserts
    the documented sweep bound.
    """
    if universe is not None and universe.max_card < pi.card + 1:
        raise ResourceLimit('need maxCard >= %d' % (pi.card + 1))
    for s in range(1, pi.length):
        for p in range(1, pi.largest + 1):
            if (leq(rectangle(s, p), pi)
                    and not leq(rectangle(s, p + 1), pi)
                    and leq(rectangle(s + 1, p), pi)):
                return False
    return True


# ---------------------------------------------------------------------------
# length / largest part helpers

def length_equals(rho, pi):
    """Oracle: pi has exactly as many parts as the trivial rho = m[1]."""
    if not is_trivial(rho):
        raise DomainError('rho must be trivial, got %r' % (rho,))
    return pi.length == rho.card


def char_length_equals(rho, pi):
    """l(pi) = m iff m[1] fits inside pi but (m+1)[1] does not."""
    if not is_trivial(rho):
        raise DomainError('rho must be trivial, got %r' % (rho,))
    m = rho.card
    return leq(rectangle(m, 1), pi) and not leq(rectangle(m + 1, 1), pi)


def bounded_part(rho, pi):
    """Oracle: every part of pi has at most |rho| boxes (rho = [n])."""
    if not (is_total(rho) and rho.card >= 1):
        raise DomainError('rho must be a nonempty total partition')
    return pi.largest <= rho.card


def char_bounded_part(rho, pi):
    """All parts have size <= n iff [n+1] does not fit inside pi."""
    if not (is_total(rho) and rho.card >= 1):
        raise DomainError('rho must be a nonempty total partition')
    return not leq(total(rho.card + 1), pi)


def max_rectangular_below(n, pi):
    """The largest m with m[n] <= pi: total multiplicity of parts >= n."""
    if n < 1:
        raise DomainError('need n >= 1')
    return sum(m for size, m in pi.runs if size >= n)


def rectangular_triple(rho, sigma, pi):
    """Oracle: pi is the rectangle with |sigma| parts of size |rho|."""
    _check_rect_triple_domain(rho, sigma)
    return pi == rectangle(sigma.card, rho.card)


def char_rectangular_triple(rho, sigma, pi):
    """pi is |sigma|[|rho|] iff b(pi)=|rho|, l(pi)=|sigma|, pi rectangular."""
    _check_rect_triple_domain(rho, sigma)
    return (pi.largest == rho.card and pi.length == sigma.card
            and char_rectangular(pi))


def _check_rect_triple_domain(rho, sigma):
    if not (is_total(rho) and rho.card >= 1):
        raise DomainError('rho must be a nonempty total partition')
    if not (is_trivial(sigma) and sigma.card >= 1):
        raise DomainError('sigma must be a nonempty trivial partition')


# ---------------------------------------------------------------------------
# part membership (two variants: the two polarities of the final relation)

def is_part_of(rho, pi):
    """Oracle: pi has a part of size |rho| (rho = [n], nonempty total)."""
    _check_part_of_domain(rho)
    return pi.has_part(rho.card)


def char_part_of_a(rho, pi):
    """Membership variant A: ... whenever r[n] <= pi but (r+1)[n] is not,
    then r[n+1] <= pi."""
    return _char_part_of(rho, pi, final_fits=True)


def char_part_of_b(rho, pi):
    """Membership variant B: ... then r[n+1] is NOT <= pi."""
    return _char_part_of(rho, pi, final_fits=False)


def _char_part_of(rho, pi, final_fits):
    _check_part_of_domain(rho)
    n = rho.card
    if not leq(rho, pi):
        return False
    for r in range(1, pi.length + 1):
        if leq(rectangle(r, n), pi) and not leq(rectangle(r + 1, n), pi):
            if leq(rectangle(r, n + 1), pi) != final_fits:
                return False
    return True


def _check_part_of_domain(rho):
    if not (is_total(rho) and rho.card >= 1):
        raise DomainError('rho must be a nonempty total partition')


# ---------------------------------------------------------------------------
# factorials

def is_factorial(rho, pi):
    """Oracle: pi is the staircase with largest part |rho|."""
    if not is_total(rho):
        raise DomainError('rho must be total')
    return pi == factorial_partition(rho.card)


def char_factorial(rho, pi):
    """pi = [n]! iff b(pi) = b(rho) = n, every [r] <= [n] is a part of pi,
    and all parts of pi are distinct."""
    if not is_total(rho):
        raise DomainError('rho must be total')
    n = rho.card
    if pi.largest != n or rho.largest != n:
        return False
    for r in range(1, n + 1):
        if not pi.has_part(r):
            return False
    return has_distinct_parts(pi)


def factorial_sum(pi):
    """The multiset union of m_i copies of [n_i]! over the runs of pi.

    Its length equals the cardinality of pi, which is what makes it the
    minimal witness in the height comparison below.
    """
    counts = {}
    for n, m in pi.runs:
        for size in range(1, n + 1):
            counts[size] = counts.get(size, 0) + m
    return Partition(sorted(counts.items(), reverse=True))


def same_height_total_trivial(rho, pi):
    """Oracle: the total rho and the trivial pi have equal cardinality."""
    _check_same_height_domain(rho, pi)
    return rho.card == pi.card


def char_same_height_total_trivial(rho, pi):
    """rho = [r] and pi = m[1] sit at the same height iff the staircase
    [r]! has exactly m parts."""
    _check_same_height_domain(rho, pi)
    return factorial_partition(rho.card).length == pi.card


def _check_same_height_domain(rho, pi):
    if not is_total(rho):
        raise DomainError('rho must be total')
    if not is_trivial(pi):
        raise DomainError('pi must be trivial')


# ---------------------------------------------------------------------------
# addition over totals

def add_triple(rho, sigma, pi):
    """Oracle: |rho| + |sigma| = |pi| over total partitions."""
    _check_totals(rho, sigma, pi)
    return rho.card + sigma.card == pi.card


def _add_witness(rho, pi):
    """The unique distinct-part partition whose parts are exactly the
    totals strictly above rho and at most pi: [a+1] + ... + [c]."""
    return from_parts(range(rho.card + 1, pi.card + 1))


def char_add(rho, sigma, pi, universe=None):
    """Addition: totals, both summands strictly below pi, and the witness
    filling (|rho|, |pi|] has length exactly |sigma|.

    The inner quantifier is support-reduced: requiring distinct parts
    whose sizes are exactly the totals in (rho, pi] pins the witness
    uniquely, so it is constructed rather than swept.
    """
    return _char_add(rho, sigma, pi, exact=True)


def char_add_geq(rho, sigma, pi, universe=None):
    """Addition with the weaker length conclusion (witness length at
    least |sigma|); kept for comparison, certifies a superset."""
    return _char_add(rho, sigma, pi, exact=False)


def _char_add(rho, sigma, pi, exact):
    _check_totals(rho, sigma, pi)
    if not (strictly_less(rho, pi) and strictly_less(sigma, pi)):
        return False
    witness = _add_witness(rho, pi)
    if exact:
        return witness.length == sigma.card
    return witness.length >= sigma.card


def char_add_sweep(rho, sigma, pi, universe, exact=True):
    """Literal sweep form of the addition characterization.

    Ranges the witness candidate and the membership probe over the whole
    universe; raises when the universe cannot contain the witness.
    """
    _check_totals(rho, sigma, pi)
    need = sum(range(rho.card + 1, pi.card + 1))
    if universe.max_card < need:
        raise ResourceLimit('need maxCard >= %d for the witness' % need)
    if not (strictly_less(rho, pi) and strictly_less(sigma, pi)):
        return False
    for beta in universe:
        if not has_distinct_parts(beta):
            continue
        good = True
        for alpha in universe:
            if not is_total(alpha) or alpha.card == 0:
                continue
            in_range = strictly_less(rho, alpha) and leq(alpha, pi)
            if beta.has_part(alpha.card) != in_range:
                good = False
                break
        if not good:
            continue
        if exact:
            if beta.length != sigma.card:
                return False
        elif beta.length < sigma.card:
            return False
    return True


def _check_totals(*args):
    for x in args:
        if not is_total(x):
            raise DomainError('arguments must be total partitions')


# ---------------------------------------------------------------------------
# part frequency

def part_frequency(rho, sigma, pi):
    """Oracle: the part |rho| appears in pi exactly |sigma| times."""
    _check_frequency_domain(rho, sigma)
    return pi.multiplicity(rho.card) == sigma.card


def char_frequency(rho, sigma, pi, universe=None):
    """Frequency via maximal rectangles, with the gap to the next larger
    part pinned exactly (the tightest probe attains equality)."""
    return _char_frequency(rho, sigma, pi, exact=True)


def char_frequency_leq(rho, sigma, pi, universe=None):
    """Frequency with the literal upper-bound conclusion only (n <= m-t);
    kept for comparison, certifies a superset."""
    return _char_frequency(rho, sigma, pi, exact=False)


def _char_frequency(rho, sigma, pi, exact):
    _check_frequency_domain(rho, sigma)
    r, n = rho.card, sigma.card
    if pi == rectangle(n, r):
        return True
    if not pi.has_part(r):                      # (1)
        return False
    m = max_rectangular_below(r, pi)
    if pi.largest == r:                         # (2)
        return n == m
    # (3): probe every larger part of pi
    gaps = [m - max_rectangular_below(size, pi)
            for size, _ in pi.runs if size > r]
    if any(n > gap for gap in gaps):
        return False
    if exact and not any(n == gap for gap in gaps):
        return False
    return True


def _check_frequency_domain(rho, sigma):
    if not (is_total(rho) and rho.card >= 1):
        raise DomainError('rho must be a nonempty total partition')
    if not (is_total(sigma) and sigma.card >= 1):
        raise DomainError('sigma must be a nonempty total partition')


# ---------------------------------------------------------------------------
# height comparison over one total argument

def height_geq(rho, pi):
    """Oracle: |pi| >= |rho| for total rho."""
    if not is_total(rho):
        raise DomainError('rho must be total')
    return pi.card >= rho.card


def _min_constrained_length(pi):
    """The least length among partitions meeting the forced-multiplicity
    conditions of pi: part [r] must appear at least max_rectangular_below(r, pi)
    times, so the minimum is the sum of those bounds."""
    return sum(max_rectangular_below(r, pi) for r in range(1, pi.largest + 1))


def char_height_geq(rho, pi, universe=None):
    """|pi| >= |rho| iff every partition satisfying the forced-multiplicity
    conditions has length >= |rho|.

    Support-reduced: the multiplicity requirements are disjoint (each
    part of a satisfying partition counts toward exactly one size), so
    the least satisfying length is their sum, attained by factorial_sum;
    the universal quantifier is decided exactly without enumeration.
    """
    if not is_total(rho):
        raise DomainError('rho must be total')
    return _min_constrained_length(pi) >= rho.card


def satisfies_height_conditions(sigma, pi):
    """Does sigma meet the forced-multiplicity conditions induced by pi?

    For every r and maximal m with m[r] <= pi, the part [r] must appear
    in sigma at least m times.
    """
    for r in range(1, pi.largest + 1):
        if sigma.multiplicity(r) < max_rectangular_below(r, pi):
            return False
    return True


def char_height_geq_sweep(rho, pi, universe):
    """Literal sweep form: every universe element meeting the conditions
    has length >= |rho|; needs the universe to reach the minimal witness."""
    if not is_total(rho):
        raise DomainError('rho must be total')
    need = factorial_sum(pi).card
    if universe.max_card < need:
        raise ResourceLimit('need maxCard >= %d for the witness' % need)
    for sigma in universe:
        if satisfies_height_conditions(sigma, pi) and sigma.length < rho.card:
            return False
    return True


def height_eq(rho, pi):
    """Oracle: |pi| = |rho| for total rho."""
    if not is_total(rho):
        raise DomainError('rho must be total')
    return pi.card == rho.card


def char_height_eq(rho, pi, universe=None):
    """|pi| = |rho| iff |pi| >= |rho| but not |pi| >= |rho| + 1."""
    if not is_total(rho):
        raise DomainError('rho must be total')
    return (char_height_geq(rho, pi)
            and not char_height_geq(total(rho.card + 1), pi))


# ---------------------------------------------------------------------------
# multiplication over totals

def mult_triple(rho, sigma, pi):
    """Oracle: |rho| * |sigma| = |pi| over total partitions."""
    _check_totals(rho, sigma, pi)
    return rho.card * sigma.card == pi.card


def char_mult(rho, sigma, pi, universe=None):
    """Multiplication: |pi| equals the height of the rectangle with |rho|
    parts of size |sigma|, expressed through the height-equality
    characterization (degenerate rectangles are the empty partition)."""
    _check_totals(rho, sigma, pi)
    beta = rectangle(rho.card, sigma.card)
    return (char_height_geq(pi, beta)
            and not char_height_geq(total(pi.card + 1), beta))


# ---------------------------------------------------------------------------
# reconstruction

def reconstruction_key(pi):
    """An order-independent fingerprint of the lower-cover set."""
    return frozenset(lower_covers(pi))


# ---------------------------------------------------------------------------
# the registry

class CharacterizationPair:
    """A named predicate with its oracle, characterization and claimed class.

    domain(universe) yields the argument tuples the pair is defined on,
    in a deterministic order.  boundary(args) returns a reason string
    when a tuple is an expected boundary case whose mismatch is reported
    separately instead of counted as a failure.  Informational pairs
    record alternative readings; their failures do not gate a run.
    """

    def __init__(self, name, arity, oracle, characterization, claimed_class,
                 domain, needs_universe=False, universe_margin=0,
                 boundary=None, informational=False, note=''):
        self.name = name
        self.arity = arity
        self.oracle = oracle
        self.characterization = characterization
        self.claimed_class = claimed_class
        self.domain = domain
        self.needs_universe = needs_universe
        self.universe_margin = universe_margin
        self.boundary = boundary
        self.informational = informational
        self.note = note

    def evaluate(self, args, universe=None):
        """Return (oracle verdict, characterization verdict) for one tuple."""
        if self.needs_universe:
            return self.oracle(*args), self.characterization(*args, universe)
        return self.oracle(*args), self.characterization(*args)

    def __repr__(self):
        return 'CharacterizationPair(%r)' % self.name


def _totals(universe, nonempty=False):
    out = [] if nonempty else [EMPTY]
    out.extend(total(n) for n in range(1, universe.max_card + 1))
    return out


def _trivials(universe, nonempty=False):
    out = [] if nonempty else [EMPTY]
    out.extend(rectangle(m, 1) for m in range(1, universe.max_card + 1))
    return out


def _dom_each(universe):
    for pi in universe:
        yield (pi,)


def _dom_trivial_each(universe):
    for rho in _trivials(universe):
        for pi in universe:
            yield (rho, pi)


def _dom_nonempty_total_each(universe):
    for rho in _totals(universe, nonempty=True):
        for pi in universe:
            yield (rho, pi)


def _dom_total_each(universe):
    for rho in _totals(universe):
        for pi in universe:
            yield (rho, pi)


def _dom_total_trivial(universe):
    for rho in _totals(universe):
        for pi in _trivials(universe):
            yield (rho, pi)


def _dom_totals3(universe):
    totals = _totals(universe)
    for rho in totals:
        for sigma in totals:
            for pi in totals:
                yield (rho, sigma, pi)


def _dom_nonempty_total_total_rect(universe):
    for rho in _totals(universe, nonempty=True):
        for sigma in _trivials(universe, nonempty=True):
            for pi in universe:
                yield (rho, sigma, pi)


def _dom_freq(universe):
    for rho in _totals(universe, nonempty=True):
        for sigma in _totals(universe, nonempty=True):
            for pi in universe:
                yield (rho, sigma, pi)


def _identity_triple(args):
    rho, sigma, pi = args
    if rho.card == 0 or sigma.card == 0:
        return ('identity triple: the strict-bound condition excludes the '
                'case where a summand equals the sum')
    return None


REGISTRY = {}


def _register(pair):
    REGISTRY[pair.name] = pair
    return pair


_register(CharacterizationPair(
    'lemma-3.1-total', 1, is_total, char_total, 'Delta0', _dom_each,
    note='total iff the two-rows partition does not fit'))

_register(CharacterizationPair(
    'lemma-3.1-trivial', 1, is_trivial, char_trivial, 'Pi1', _dom_each,
    note='trivial iff the single part of size two does not fit'))

_register(CharacterizationPair(
    'lemma-3.2-rectangular', 1, is_rectangular, char_rectangular, 'Delta2',
    _dom_each, note='rectangular iff at most one lower cover'))

_register(CharacterizationPair(
    'lemma-3.4-length', 2, length_equals, char_length_equals, 'Pi1',
    _dom_trivial_each, note='length read off against trivial rectangles'))

_register(CharacterizationPair(
    'lemma-3.4-bounded-part', 2, bounded_part, char_bounded_part, 'Delta0',
    _dom_nonempty_total_each, note='part sizes bounded iff the next total does not fit'))

_register(CharacterizationPair(
    'lemma-3.4-rectangular-triple', 3, rectangular_triple,
    char_rectangular_triple, 'Delta2', _dom_nonempty_total_total_rect,
    note='a rectangle is its largest part, its length, and rectangularity'))

_register(CharacterizationPair(
    'prop-3.5-distinct', 1, has_distinct_parts, char_distinct_parts, 'Pi2',
    _dom_each, needs_universe=True, universe_margin=1,
    note='distinctness via maximal rectangles'))

_register(CharacterizationPair(
    'prop-3.6-part-of-a', 2, is_part_of, char_part_of_a, 'Pi2',
    _dom_nonempty_total_each, informational=True,
    note='variant A: final relation read as "fits"'))

_register(CharacterizationPair(
    'prop-3.6-part-of-b', 2, is_part_of, char_part_of_b, 'Pi2',
    _dom_nonempty_total_each,
    note='variant B: final relation read as "does not fit"'))

_register(CharacterizationPair(
    'prop-3.7-factorial', 2, is_factorial, char_factorial, 'Pi2',
    _dom_total_each, note='staircase iff all smaller totals appear, distinctly'))

_register(CharacterizationPair(
    'lemma-3.8-same-height', 2, same_height_total_trivial,
    char_same_height_total_trivial, 'Pi3', _dom_total_trivial,
    note='equal height read off the length of the staircase witness'))

_register(CharacterizationPair(
    'prop-3.9-add', 3, add_triple, char_add, 'Pi3', _dom_totals3,
    boundary=_identity_triple,
    note='witness length pinned exactly; see the -geq variant for the '
         'weaker reading'))

_register(CharacterizationPair(
    'prop-3.9-add-geq', 3, add_triple, char_add_geq, 'Pi3', _dom_totals3,
    boundary=_identity_triple, informational=True,
    note='lower-bound reading: accepts every triple with |rho|+|sigma| <= |pi|'))

_register(CharacterizationPair(
    'prop-3.10-frequency', 3, part_frequency, char_frequency, 'Pi3',
    _dom_freq, note='gap to the next larger part pinned exactly; see the '
                    '-leq variant for the weaker reading'))

_register(CharacterizationPair(
    'prop-3.10-frequency-leq', 3, part_frequency, char_frequency_leq, 'Pi3',
    _dom_freq, informational=True,
    note='upper-bound reading: accepts frequencies below the true one'))

_register(CharacterizationPair(
    'prop-3.11-height-geq', 2, height_geq, char_height_geq, 'Pi3',
    _dom_total_each,
    note='support-reduced universal quantifier over constrained partitions'))

_register(CharacterizationPair(
    'prop-3.12-height-eq', 2, height_eq, char_height_eq, 'Pi3',
    _dom_total_each, note='sandwich of two height comparisons'))

_register(CharacterizationPair(
    'prop-3.13-mult', 3, mult_triple, char_mult, 'Pi3', _dom_totals3,
    note='height equality against the rectangle built from the factors'))


def get_pair(name):
    """Look up a registered pair; raises KeyError with the known names."""
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError('unknown pair %r; known: %s'
                       % (name, ', '.join(sorted(REGISTRY))))


def all_pairs():
    """All registered pairs in registration order."""
    return list(REGISTRY.values())
