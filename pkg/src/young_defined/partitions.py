"""Integer partitions and the primitive structure of Young's lattice.

A partition is kept in canonical run-length form: a tuple of
(partSize, multiplicity) pairs with part sizes strictly decreasing and
every multiplicity >= 1.  The empty tuple is the empty partition.
The containment order, covers, conjugation, grading and bounded
enumeration all live here; everything downstream builds on them.
"""

import re


class PartitionError(ValueError):
    """Raised for malformed parts, runs, or unparseable partition text."""


class ResourceLimit(RuntimeError):
    """Raised when a computation exceeds its documented practical ceiling."""


# Practical ceiling for full enumeration: the number of partitions of
# cardinality <= 50 is under a million, which stays comfortably in memory.
MAX_ENUMERATION_CARD = 50


class Partition:
    """A partition in canonical run-length form.

    runs is a tuple of (size, mult) pairs, sizes strictly decreasing.
    cardinality, length and largest part are computed once and cached,
    since the harness consults them in every inner loop.
    """

    __slots__ = ('runs', 'card', 'length', 'largest', '_hash')

    def __init__(self, runs):
        runs = tuple((n, m) for n, m in runs)
        previous = None
        for n, m in runs:
            if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 1:
                raise PartitionError('bad run (%r,%r): need positive integers' % (n, m))
            if previous is not None and n >= previous:
                raise PartitionError('run sizes must strictly decrease')
            previous = n
        self.runs = runs
        self.card = sum(n * m for n, m in runs)
        self.length = sum(m for _, m in runs)
        self.largest = runs[0][0] if runs else 0
        self._hash = hash(runs)

    def parts(self):
        """The expanded descending part sequence, e.g. (3,1,1)."""
        out = []
        for n, m in self.runs:
            out.extend([n] * m)
        return tuple(out)

    def multiplicity(self, n):
        """How many parts of size n the partition has."""
        for size, m in self.runs:
            if size == n:
                return m
            if size < n:
                return 0
        return 0

    def has_part(self, n):
        return self.multiplicity(n) > 0

    def __eq__(self, other):
        return isinstance(other, Partition) and self.runs == other.runs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return 'Partition(%r)' % render(self)


EMPTY = Partition(())


def from_parts(parts):
    """Build the canonical partition from any iterable of positive parts."""
    counts = {}
    for p in parts:
        if not isinstance(p, int) or p < 1:
            raise PartitionError('parts must be positive integers, got %r' % (p,))
        counts[p] = counts.get(p, 0) + 1
    return Partition(sorted(counts.items(), reverse=True))


def leq(sigma, pi):
    """Containment order: row i of sigma is no longer than row i of pi.

    Walks both run lists in parallel instead of expanding the parts.
    """
    if sigma.length > pi.length:
        return False
    runs_s = sigma.runs
    runs_p = pi.runs
    i = j = 0          # current run in sigma / pi
    left_s = left_p = 0  # rows left in the current run
    while True:
        if left_s == 0:
            if i == len(runs_s):
                return True
            size_s, left_s = runs_s[i]
            i += 1
        if left_p == 0:
            if j == len(runs_p):
                return False
            size_p, left_p = runs_p[j]
            j += 1
        if size_s > size_p:
            return False
        step = min(left_s, left_p)
        left_s -= step
        left_p -= step


def lower_covers(pi):
    """All partitions covered by pi: remove one box from the last row of a run.

    Decrementing one part of each distinct size gives each lower cover
    exactly once, so the result has one element per run of pi.
    """
    out = set()
    runs = pi.runs
    for idx, (n, m) in enumerate(runs):
        new = list(runs)
        if m == 1:
            del new[idx]
            at = idx
        else:
            new[idx] = (n, m - 1)
            at = idx + 1
        if n > 1:
            # merge the shrunk part into the following run if the sizes meet
            if at < len(new) and new[at][0] == n - 1:
                size, mult = new[at]
                new[at] = (size, mult + 1)
            else:
                new.insert(at, (n - 1, 1))
        out.add(Partition(new))
    return out


def _upper_cover_runs(pi):
    """Structural upper covers: add one box to the first row of a run, or a new row."""
    out = set()
    runs = pi.runs
    for idx, (n, m) in enumerate(runs):
        new = list(runs)
        if m == 1:
            del new[idx]
        else:
            new[idx] = (n, m - 1)
        # the grown part has size n+1; merge with the run before if it matches
        if idx > 0 and runs[idx - 1][0] == n + 1:
            at = idx - 1
            size, mult = new[at]
            new[at] = (size, mult + 1)
        else:
            new.insert(idx, (n + 1, 1))
        out.add(Partition(new))
    # a brand-new row of size 1
    if runs and runs[-1][0] == 1:
        new = list(runs)
        new[-1] = (1, runs[-1][1] + 1)
    else:
        new = list(runs) + [(1, 1)]
    out.add(Partition(new))
    return out


def upper_covers(pi, universe):
    """All covers of pi inside the universe (its next level must exist)."""
    if pi.card + 1 > universe.max_card:
        raise ResourceLimit('level %d is not enumerated (maxCard=%d)'
                            % (pi.card + 1, universe.max_card))
    return _upper_cover_runs(pi)


def conjugate(pi):
    """The transpose partition (rows and columns of the diagram swapped)."""
    runs = pi.runs
    if not runs:
        return EMPTY
    out = []
    rows = 0
    for idx, (n, m) in enumerate(runs):
        rows += m
        below = runs[idx + 1][0] if idx + 1 < len(runs) else 0
        # columns of width rows, one for each size step from n down to below
        out.append((rows, n - below))
    out.reverse()
    return Partition(out)


def factorial_partition(n):
    """The staircase (n, n-1, ..., 1); n = 0 gives the empty partition."""
    if n < 0:
        raise PartitionError('need n >= 0, got %r' % (n,))
    return Partition((k, 1) for k in range(n, 0, -1))


def meet(sigma, pi):
    """Greatest lower bound: componentwise minimum of the part sequences."""
    a, b = sigma.parts(), pi.parts()
    return from_parts(min(x, y) for x, y in zip(a, b))


def join(sigma, pi):
    """Least upper bound: componentwise maximum of the padded part sequences."""
    a, b = sigma.parts(), pi.parts()
    if len(a) < len(b):
        a = a + (0,) * (len(b) - len(a))
    else:
        b = b + (0,) * (len(a) - len(b))
    return from_parts(max(x, y) for x, y in zip(a, b))


def _descending_tuples(n, cap):
    """Yield the descending part tuples of n (parts <= cap), largest first."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _descending_tuples(n - first, first):
            yield (first,) + rest


def enumerate_level(n):
    """All partitions of n, in reverse-lexicographic (largest-first) order."""
    return [from_parts(t) for t in _descending_tuples(n, n)]


class Universe:
    """All partitions of cardinality 0..maxCard, graded and indexed.

    Level n holds the partitions of n in reverse-lexicographic order on
    the descending part sequence, so enumeration is reproducible run to
    run.  index maps a partition to its (level, position); ordinals give
    a single global numbering, level by level, used for bitmask caches.
    """

    def __init__(self, max_card):
        if max_card < 0:
            raise PartitionError('maxCard must be >= 0')
        if max_card > MAX_ENUMERATION_CARD:
            raise ResourceLimit('maxCard %d exceeds the practical ceiling %d'
                                % (max_card, MAX_ENUMERATION_CARD))
        self.max_card = max_card
        self.levels = [tuple(enumerate_level(n)) for n in range(max_card + 1)]
        self.index = {}
        self.elements = []
        for n, level in enumerate(self.levels):
            for pos, pi in enumerate(level):
                self.index[pi] = (n, pos)
                self.elements.append(pi)
        self._down_bits = None
        self._up_bits = None

    def level(self, n):
        return self.levels[n]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, pi):
        return pi in self.index

    def ordinal(self, pi):
        """Global position of pi in the level-by-level enumeration."""
        n, pos = self.index[pi]
        return sum(len(self.levels[k]) for k in range(n)) + pos

    def ordinal_cutoff(self, card):
        """Number of elements with cardinality <= card."""
        return sum(len(self.levels[k]) for k in range(min(card, self.max_card) + 1))

    def down_bits(self):
        """For each ordinal i, a bitmask of the ordinals j with elem_j <= elem_i.

        Built by one pass up the levels: the down-set of pi is pi itself
        together with the down-sets of its lower covers.
        """
        if self._down_bits is None:
            bits = []
            ordinals = {}
            for i, pi in enumerate(self.elements):
                ordinals[pi] = i
                mask = 1 << i
                for sigma in lower_covers(pi):
                    mask |= bits[ordinals[sigma]]
                bits.append(mask)
            self._down_bits = bits
        return self._down_bits

    def up_bits(self):
        """For each ordinal i, a bitmask of the ordinals j with elem_i <= elem_j."""
        if self._up_bits is None:
            bits = [0] * len(self.elements)
            for i in range(len(self.elements) - 1, -1, -1):
                pi = self.elements[i]
                mask = 1 << i
                if pi.card < self.max_card:
                    for rho in _upper_cover_runs(pi):
                        mask |= bits[self.ordinal(rho)]
                bits[i] = mask
            self._up_bits = bits
        return self._up_bits


def enumerate_universe(max_card):
    """Materialize the lattice up to the given cardinality."""
    return Universe(max_card)


_pcounts = [1, 1]


def partition_count(n):
    """p(n) by Euler's pentagonal-number recurrence.

    Kept deliberately independent of the enumerator so the two can
    cross-check each other.
    """
    if n < 0:
        return 0
    while len(_pcounts) <= n:
        m = len(_pcounts)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m:
                break
            term = _pcounts[m - g1] + (_pcounts[m - g2] if g2 <= m else 0)
            total += term if k % 2 == 1 else -term
            k += 1
        _pcounts.append(total)
    return _pcounts[n]


def render(pi):
    """Canonical-sum syntax: 0 for the empty partition, else m[n] terms.

    The multiplicity is omitted when it is 1, so (6,6,5,4,4,4) renders
    as 2[6]+[5]+3[4].
    """
    if not pi.runs:
        return '0'
    terms = []
    for n, m in pi.runs:
        terms.append('[%d]' % n if m == 1 else '%d[%d]' % (m, n))
    return '+'.join(terms)


_TERM_RE = re.compile(r'^(\d+)?\[(\d+)\]$')


def parse_partition(text):
    """Parse canonical-sum syntax (0, [n], m[n]+...) or a tuple (6,6,5).

    Sum terms may repeat a size or arrive out of order; the result is
    canonicalized, so [1]+[1] is the same partition as 2[1].
    """
    text = text.strip()
    if text == '0':
        return EMPTY
    if text.startswith('('):
        if not text.endswith(')'):
            raise PartitionError('unterminated tuple form: %r' % text)
        inner = text[1:-1].strip()
        if not inner:
            return EMPTY
        try:
            parts = [int(tok.strip()) for tok in inner.split(',') if tok.strip() != '']
        except ValueError:
            raise PartitionError('bad tuple form: %r' % text)
        return from_parts(parts)
    counts = {}
    for raw in text.split('+'):
        match = _TERM_RE.match(raw.strip())
        if not match:
            raise PartitionError('bad term %r in %r' % (raw.strip(), text))
        mult = int(match.group(1)) if match.group(1) else 1
        size = int(match.group(2))
        if size < 1 or mult < 1:
            raise PartitionError('bad term %r in %r' % (raw.strip(), text))
        counts[size] = counts.get(size, 0) + mult
    return Partition(sorted(counts.items(), reverse=True))
