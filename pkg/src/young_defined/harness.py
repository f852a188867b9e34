"""Certification harness: proposition sweeps, reconstruction and
automorphism checks, poset embedding, and machine-readable reports.

Every check produces a CheckReport that serializes to one JSON document
(schema ``young-defined/1``).  Witness lists are capped at 100 entries
but every count is exact.  Reports are byte-deterministic for the same
inputs except for the elapsed-seconds field.
"""

import json
import time

from . import formulas
from .arithmetization import decode, encode, ord_via_encoding
from .catalog import (all_pairs, get_pair, is_rectangular, is_total,
                      is_trivial, reconstruction_key, total)
from .partitions import (EMPTY, ResourceLimit, conjugate, enumerate_universe,
                         leq, lower_covers, parse_partition, partition_count,
                         render)

SCHEMA = 'young-defined/1'
WITNESS_CAP = 100


class UsageError(Exception):
    """Bad input: unknown name, malformed file, out-of-range bound."""


class CheckReport:
    """Outcome of one certification sweep.

    verdict is 'pass' (no mismatches, stable where applicable), 'fail'
    (at least one genuine mismatch), or 'unstable' (no mismatches but a
    truncation-sensitivity flag fired).  Boundary witnesses are expected
    edge cases reported separately and never counted as mismatches.
    """

    def __init__(self, name, range_description, total_checked, mismatches,
                 elapsed, verdict, boundary=None, informational=False,
                 details=None, note=''):
        self.name = name
        self.range_description = range_description
        self.total_checked = total_checked
        self.mismatch_count = len(mismatches)
        self.witnesses = mismatches[:WITNESS_CAP]
        self.boundary_count = len(boundary) if boundary else 0
        self.boundary_witnesses = (boundary or [])[:WITNESS_CAP]
        self.elapsed = elapsed
        self.verdict = verdict
        self.informational = informational
        self.details = details or {}
        self.note = note

    def to_dict(self):
        doc = {
            'schema': SCHEMA,
            'propositionName': self.name,
            'rangeDescription': self.range_description,
            'totalTuplesChecked': self.total_checked,
            'mismatchCount': self.mismatch_count,
            'witnesses': self.witnesses,
            'elapsedSeconds': round(self.elapsed, 3),
            'verdict': self.verdict,
        }
        if self.boundary_count:
            doc['boundaryCount'] = self.boundary_count
            doc['boundaryWitnesses'] = self.boundary_witnesses
        if self.informational:
            doc['informational'] = True
        if self.details:
            doc['details'] = self.details
        if self.note:
            doc['note'] = self.note
        return doc

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary_line(self):
        tag = ' (informational)' if self.informational else ''
        extra = ''
        if self.boundary_count:
            extra = ', %d boundary' % self.boundary_count
        return '%-34s %-8s %7d tuples, %d mismatches%s, %.2fs%s' % (
            self.name, self.verdict.upper(), self.total_checked,
            self.mismatch_count, extra, self.elapsed, tag)


# ---------------------------------------------------------------------------
# proposition sweeps

def check_proposition(name, max_card, slack=0):
    """Sweep one registered oracle/characterization pair exhaustively."""
    try:
        pair = get_pair(name)
    except KeyError as exc:
        raise UsageError(str(exc))
    return run_pair(pair, max_card, slack)


def run_pair(pair, max_card, slack=0):
    start = time.perf_counter()
    sweep = enumerate_universe(max_card)
    aux = None
    if pair.needs_universe:
        aux = enumerate_universe(max_card + pair.universe_margin + slack)
    total_checked = 0
    mismatches = []
    boundary = []
    for args in pair.domain(sweep):
        total_checked += 1
        want, got = pair.evaluate(args, aux)
        if want != got:
            entry = {'args': [render(a) for a in args],
                     'oracle': want, 'characterization': got}
            reason = pair.boundary(args) if pair.boundary else None
            if reason:
                entry['reason'] = reason
                boundary.append(entry)
            else:
                mismatches.append(entry)
    verdict = 'pass' if not mismatches else 'fail'
    return CheckReport(
        pair.name,
        'all registered domain tuples with cardinality <= %d (slack %d)'
        % (max_card, slack),
        total_checked, mismatches, time.perf_counter() - start, verdict,
        boundary=boundary, informational=pair.informational, note=pair.note)


def resolve_variants(name_a, name_b, max_card, slack=0):
    """Run two readings of the same proposition; exactly one must pass."""
    return variant_resolution(check_proposition(name_a, max_card, slack),
                              check_proposition(name_b, max_card, slack))


def variant_resolution(report_a, report_b):
    """Combine two already-computed variant reports; exactly one must pass."""
    passed = [r.name for r in (report_a, report_b) if r.mismatch_count == 0]
    verdict = 'pass' if len(passed) == 1 else 'fail'
    mismatches = []
    if verdict == 'fail':
        mismatches = [{'passing': passed}]
    return CheckReport(
        'variant-resolution(%s | %s)' % (report_a.name, report_b.name),
        'derived from the two variant sweeps: %s; %s'
        % (report_a.range_description, report_b.range_description),
        report_a.total_checked + report_b.total_checked,
        mismatches, report_a.elapsed + report_b.elapsed, verdict,
        details={'passing': passed,
                 'mismatches': {report_a.name: report_a.mismatch_count,
                                report_b.name: report_b.mismatch_count}},
        note='exactly one reading should survive the sweep')


# ---------------------------------------------------------------------------
# reconstruction from lower covers

def reconstruction_check(max_card):
    """Injectivity of the lower-cover fingerprint on each level >= 4,
    plus confirmation of the known two-element collision on level 2."""
    if max_card < 4:
        raise UsageError('reconstruction check needs max_card >= 4')
    start = time.perf_counter()
    universe = enumerate_universe(max_card)
    total_checked = 0
    mismatches = []
    collisions_by_level = {}
    for n, level in enumerate(universe.levels):
        groups = {}
        for pi in level:
            total_checked += 1
            groups.setdefault(reconstruction_key(pi), []).append(pi)
        collided = sorted([sorted(render(p) for p in g)
                           for g in groups.values() if len(g) > 1])
        if collided:
            collisions_by_level[n] = collided
            if n >= 4:
                mismatches.append({'level': n, 'groups': collided})
    level2 = collisions_by_level.get(2, [])
    level2_ok = level2 == [[render(parse_partition('[1]+[1]')), '[2]']]
    verdict = 'pass' if not mismatches and level2_ok else 'fail'
    return CheckReport(
        'reconstruction-from-lower-covers',
        'levels 0..%d; injectivity required on levels 4..%d' % (max_card, max_card),
        total_checked, mismatches, time.perf_counter() - start, verdict,
        details={'level2Collision': level2,
                 'level3Injective': 3 not in collisions_by_level},
        note='the two partitions of 2 share the single lower cover [1]')


# ---------------------------------------------------------------------------
# automorphisms of the truncated diagram

AUTOMORPHISM_RANK_CEILING = 12


def automorphism_search(max_rank=8):
    """All rank-preserving bijections of levels 0..max_rank preserving
    the cover relation in both directions, by per-level backtracking.

    Covers connect consecutive levels only, so a level-wise bijection
    that maps every element's lower-cover set onto its image's
    lower-cover set preserves and reflects covers.
    """
    if max_rank < 0:
        raise UsageError('max_rank must be >= 0')
    if max_rank > AUTOMORPHISM_RANK_CEILING:
        raise ResourceLimit('automorphism search is capped at rank %d'
                            % AUTOMORPHISM_RANK_CEILING)
    universe = enumerate_universe(max_rank)
    elements = universe.elements
    lc = [frozenset(universe.ordinal(c) for c in lower_covers(pi))
          for pi in elements]
    levels = [[universe.ordinal(pi) for pi in level]
              for level in universe.levels]
    order = [o for level in levels for o in level]
    level_of = {}
    for n, level in enumerate(levels):
        for o in level:
            level_of[o] = n
    image = [None] * len(elements)
    used = set()
    found = []

    def extend(i):
        if i == len(order):
            found.append(list(image))
            return
        e = order[i]
        key = frozenset(image[c] for c in lc[e])
        for u in levels[level_of[e]]:
            if u in used or lc[u] != key:
                continue
            image[e] = u
            used.add(u)
            extend(i + 1)
            used.discard(u)
            image[e] = None

    extend(0)
    found.sort()
    return [{elements[e]: elements[u] for e, u in enumerate(images)}
            for images in found]


def classify_automorphism(mapping):
    if all(value == key for key, value in mapping.items()):
        return 'identity'
    if all(value == conjugate(key) for key, value in mapping.items()):
        return 'conjugation'
    return 'other'


def automorphism_report(max_rank=8):
    start = time.perf_counter()
    maps = automorphism_search(max_rank)
    kinds = sorted(classify_automorphism(m) for m in maps)
    expected = ['identity'] if max_rank <= 1 else ['conjugation', 'identity']
    verdict = 'pass' if kinds == expected else 'fail'
    mismatches = []
    if verdict == 'fail':
        mismatches = [{'found': kinds, 'expected': expected}]
    return CheckReport(
        'automorphism-uniqueness',
        'rank-preserving bijections of levels 0..%d' % max_rank,
        sum(partition_count(n) for n in range(max_rank + 1)),
        mismatches, time.perf_counter() - start, verdict,
        details={'count': len(maps), 'kinds': kinds},
        note='conjugation coincides with the identity below rank 2')


# ---------------------------------------------------------------------------
# finite posets and embedding

class FinitePoset:
    """A finite strict order given by elements and generating pairs.

    The stored relation is the transitive closure; a cycle in the input
    is rejected on construction.
    """

    def __init__(self, elements, pairs):
        if len(set(elements)) != len(elements):
            raise UsageError('duplicate poset elements')
        self.elements = list(elements)
        position = {e: i for i, e in enumerate(self.elements)}
        for a, b in pairs:
            if a not in position or b not in position:
                raise UsageError('relation mentions undeclared element %r'
                                 % (a if a not in position else b))
        less = set(pairs)
        changed = True
        while changed:
            changed = False
            for a, b in list(less):
                for c, d in list(less):
                    if b == c and (a, d) not in less:
                        less.add((a, d))
                        changed = True
        for e in self.elements:
            if (e, e) in less:
                raise UsageError('poset relation has a cycle through %r' % e)
        self.less = less

    @classmethod
    def parse(cls, text):
        """Line format: `elem NAME`, `lt A B`, `#` comments."""
        elements = []
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if fields[0] == 'elem' and len(fields) == 2:
                elements.append(fields[1])
            elif fields[0] == 'lt' and len(fields) == 3:
                pairs.append((fields[1], fields[2]))
            else:
                raise UsageError('line %d: expected `elem NAME` or `lt A B`,'
                                 ' got %r' % (lineno, raw))
        return cls(elements, pairs)

    @classmethod
    def chain(cls, k):
        names = ['e%d' % i for i in range(1, k + 1)]
        return cls(names, list(zip(names, names[1:])))

    @classmethod
    def antichain(cls, k):
        return cls(['a%d' % i for i in range(1, k + 1)], [])

    @classmethod
    def crown(cls):
        """The 2-crown: a, b each below both c and d, nothing else."""
        return cls(['a', 'b', 'c', 'd'],
                   [('a', 'c'), ('a', 'd'), ('b', 'c'), ('b', 'd')])


def embed_poset(poset, max_card):
    """An injective map into the partitions of cardinality <= max_card
    that preserves and reflects the strict order, or None.

    Backtracking assigns poset elements in depth order; candidate images
    are tried in enumeration order (cardinality, then level index) with
    forward checking on the remaining candidates.  None means no
    embedding exists within this truncation — it says nothing about the
    unbounded order.
    """
    universe = enumerate_universe(max_card)
    m = len(universe.elements)
    full = (1 << m) - 1
    down = universe.down_bits()
    up = universe.up_bits()
    strict_down = [down[o] & ~(1 << o) for o in range(m)]
    strict_up = [up[o] & ~(1 << o) for o in range(m)]
    incomparable = [full & ~(down[o] | up[o]) for o in range(m)]

    def depth(e):
        below = [a for a, b in poset.less if b == e]
        if not below:
            return 0
        return 1 + max(depth(a) for a in below)

    order = sorted(poset.elements,
                   key=lambda e: (depth(e), poset.elements.index(e)))
    index = {e: i for i, e in enumerate(order)}
    relation = [[None] * len(order) for _ in order]
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            if (a, b) in poset.less:
                relation[i][j] = 'below'
            elif (b, a) in poset.less:
                relation[i][j] = 'above'
            elif i != j:
                relation[i][j] = 'incomparable'

    images = [None] * len(order)

    def extend(i, candidates):
        if i == len(order):
            return True
        mask = candidates[i]
        while mask:
            low = mask & -mask
            mask ^= low
            u = low.bit_length() - 1
            narrowed = list(candidates)
            ok = True
            for j in range(i + 1, len(order)):
                if relation[i][j] == 'below':
                    narrowed[j] &= strict_up[u]
                elif relation[i][j] == 'above':
                    narrowed[j] &= strict_down[u]
                else:
                    narrowed[j] &= incomparable[u]
                narrowed[j] &= ~low
                if narrowed[j] == 0:
                    ok = False
                    break
            if ok:
                images[i] = u
                if extend(i + 1, narrowed):
                    return True
                images[i] = None
        return False

    if not extend(0, [full] * len(order)):
        return None
    mapping = {e: universe.elements[images[index[e]]] for e in poset.elements}
    verify_embedding(poset, mapping)
    return mapping


def verify_embedding(poset, mapping):
    """Independent pairwise re-check of an embedding, via leq directly."""
    for a in poset.elements:
        for b in poset.elements:
            if a == b:
                continue
            fa, fb = mapping[a], mapping[b]
            if fa == fb:
                raise RuntimeError('embedding is not injective: %s, %s' % (a, b))
            strictly_below = leq(fa, fb)
            if ((a, b) in poset.less) != strictly_below:
                raise RuntimeError(
                    'embedding check failed on (%s, %s): poset says %s, '
                    'images %s, %s say %s'
                    % (a, b, (a, b) in poset.less, render(fa), render(fb),
                       strictly_below))


def embed_report(name, poset, max_card, expect_found=True):
    start = time.perf_counter()
    mapping = embed_poset(poset, max_card)
    found = mapping is not None
    verdict = 'pass' if found == expect_found else 'fail'
    details = {'found': found}
    if found:
        details['mapping'] = {e: render(mapping[e]) for e in poset.elements}
    else:
        details['statement'] = ('no embedding within cardinality <= %d; this '
                                'does not refute embeddability in the '
                                'unbounded order' % max_card)
    mismatches = [] if verdict == 'pass' else [dict(details)]
    return CheckReport(
        name, '%d elements, %d strict pairs, images of cardinality <= %d'
        % (len(poset.elements), len(poset.less), max_card),
        len(poset.elements), mismatches, time.perf_counter() - start,
        verdict, details=details)


# ---------------------------------------------------------------------------
# formula corpus suite

_CORPUS_CLASS = {
    'cover': 'Pi1',
    'totality': 'Delta0',
    'triviality': 'Pi1',
    'empty': 'Pi1',
    'maximal-below': 'Pi2',
    'rectangular': 'Pi2',
}

_CORPUS_BOUND = {
    'cover': 8,
    'totality': 12,
    'triviality': 12,
    'empty': 12,
    'maximal-below': 10,
    'rectangular': 9,
}


def _corpus_expectation(name, universe, max_card):
    """The independently computed defined set for a corpus formula."""
    inside = [pi for pi in universe.elements if pi.card <= max_card]
    if name == 'cover':
        return {(sigma, pi) for pi in inside for sigma in lower_covers(pi)
                if sigma.card <= max_card}
    if name == 'totality':
        return {pi for pi in inside if is_total(pi)}
    if name == 'triviality':
        return {pi for pi in inside if is_trivial(pi)}
    if name == 'empty':
        return {EMPTY}
    if name == 'maximal-below':
        return {parse_partition('[2]+[1]')}
    if name == 'rectangular':
        return {pi for pi in inside if is_rectangular(pi)}
    raise UsageError('no expectation registered for corpus file %r' % name)


def corpus_report(name, text, max_card=None, slacks=(0, 1, 2, 3)):
    """Roundtrip, classification, oracle agreement and slack stability
    for one bundled formula file."""
    start = time.perf_counter()
    bound = max_card if max_card is not None else _CORPUS_BOUND[name]
    formula = formulas.parse(text)
    mismatches = []
    if formulas.parse(formulas.print_file(formula)) != formula:
        mismatches.append({'problem': 'printer roundtrip changed the tree'})
    got_class = str(formulas.prenex_classify(formula))
    if got_class != _CORPUS_CLASS[name]:
        mismatches.append({'problem': 'classification drifted',
                           'expected': _CORPUS_CLASS[name], 'got': got_class})
    free = sorted(formulas.free_vars(formula))
    universe = enumerate_universe(bound + max(slacks))
    sets = []
    for k in slacks:
        config = formulas.EvalConfig(bound, k)
        if len(free) == 1:
            sets.append(formulas.defined_set(formula, free[0], universe, config))
        else:
            sets.append(formulas.defined_relation(formula, tuple(free),
                                                  universe, config))
    expected = _corpus_expectation(name, universe, bound)
    total_checked = len(slacks) * universe.ordinal_cutoff(bound) ** len(free)
    for k, got in zip(slacks, sets):
        if got != expected:
            sample = sorted(got ^ expected,
                            key=lambda value: repr(value))[:5]
            mismatches.append({'problem': 'disagrees with the oracle set',
                               'slack': k, 'difference': len(got ^ expected),
                               'sample': [repr(s) for s in sample]})
    flips = []
    for k0, k1, before, after in zip(slacks, slacks[1:], sets, sets[1:]):
        for value in before ^ after:
            flips.append({'value': repr(value), 'fromSlack': k0, 'toSlack': k1,
                          'wasMember': value in before})
    if mismatches:
        verdict = 'fail'
    elif flips:
        verdict = 'unstable'
    else:
        verdict = 'pass'
    return CheckReport(
        'corpus-%s' % name,
        'free variables <= %d, slacks %s' % (bound, list(slacks)),
        total_checked, mismatches, time.perf_counter() - start, verdict,
        details={'class': got_class, 'setSizes': [len(s) for s in sets],
                 'flips': flips[:WITNESS_CAP], 'flipCount': len(flips)})


# ---------------------------------------------------------------------------
# arithmetization suite

def arithmetization_report(max_card, integer_ceiling, pair_card, bridge_bound):
    """Roundtrips, order agreement, and the arithmetic bridge."""
    start = time.perf_counter()
    total_checked = 0
    mismatches = []
    universe = enumerate_universe(max_card)
    seen = {}
    for sigma in universe.elements:
        total_checked += 1
        code = encode(sigma)
        if decode(code) != sigma:
            mismatches.append({'problem': 'decode(encode) moved', 'arg': render(sigma)})
        if code in seen:
            mismatches.append({'problem': 'encode collision',
                               'args': [render(sigma), render(seen[code])]})
        seen[code] = sigma
    for n in range(integer_ceiling + 1):
        total_checked += 1
        if encode(decode(n)) != n:
            mismatches.append({'problem': 'encode(decode) moved', 'arg': n})
    small = enumerate_universe(pair_card).elements
    for sigma in small:
        for pi in small:
            total_checked += 1
            if ord_via_encoding(encode(sigma), encode(pi)) != leq(sigma, pi):
                mismatches.append({'problem': 'order disagreement',
                                   'args': [render(sigma), render(pi)]})
    pair_add = get_pair('prop-3.9-add')
    pair_mult = get_pair('prop-3.13-mult')
    for m in range(bridge_bound + 1):
        for n in range(bridge_bound + 1):
            for r in range(bridge_bound + 1):
                total_checked += 2
                args = (total(m), total(n), total(r))
                if pair_add.oracle(*args) != (m + n == r):
                    mismatches.append({'problem': 'addition bridge',
                                       'args': [m, n, r]})
                if pair_mult.oracle(*args) != (m * n == r):
                    mismatches.append({'problem': 'multiplication bridge',
                                       'args': [m, n, r]})
    verdict = 'pass' if not mismatches else 'fail'
    return CheckReport(
        'arithmetization-roundtrips',
        'partitions <= %d, integers <= %d, order pairs <= %d, bridge <= %d'
        % (max_card, integer_ceiling, pair_card, bridge_bound),
        total_checked, mismatches, time.perf_counter() - start, verdict)


# ---------------------------------------------------------------------------
# profiles

_STANDARD_BOUNDS = {
    'lemma-3.1-total': 25,
    'lemma-3.1-trivial': 25,
    'lemma-3.2-rectangular': 25,
    'lemma-3.4-length': 20,
    'lemma-3.4-bounded-part': 20,
    'lemma-3.4-rectangular-triple': 12,
    'prop-3.5-distinct': 20,
    'prop-3.6-part-of-a': 18,
    'prop-3.6-part-of-b': 18,
    'prop-3.7-factorial': 15,
    'lemma-3.8-same-height': 15,
    'prop-3.9-add': 12,
    'prop-3.9-add-geq': 12,
    'prop-3.10-frequency': 15,
    'prop-3.10-frequency-leq': 15,
    'prop-3.11-height-geq': 12,
    'prop-3.12-height-eq': 12,
    'prop-3.13-mult': 20,
}

PROFILES = ('quick', 'standard', 'thorough')


def _pair_bound(name, profile):
    standard = _STANDARD_BOUNDS[name]
    if profile == 'quick':
        return min(standard, 8)
    if profile == 'thorough':
        return standard + 1
    return standard


def check_all(profile):
    """Run every registered suite at the profile's bounds.

    Returns (document, exit_code): the JSON-ready aggregate and 0 when
    every gating suite passed, 1 otherwise.  Informational suites record
    alternative readings and never gate.
    """
    if profile not in PROFILES:
        raise UsageError('unknown profile %r; expected one of %s'
                         % (profile, ', '.join(PROFILES)))
    quick = profile == 'quick'
    thorough = profile == 'thorough'
    reports = []
    by_name = {}
    for pair in all_pairs():
        report = run_pair(pair, _pair_bound(pair.name, profile))
        by_name[pair.name] = report
        reports.append(report)
    reports.append(variant_resolution(by_name['prop-3.6-part-of-a'],
                                      by_name['prop-3.6-part-of-b']))
    reports.append(reconstruction_check(10 if quick else 26 if thorough else 25))
    reports.append(automorphism_report(5 if quick else 9 if thorough else 8))
    reports.append(arithmetization_report(
        max_card=8 if quick else 15,
        integer_ceiling=10 ** 4 if quick else 10 ** 6,
        pair_card=8 if quick else 12,
        bridge_bound=10 if quick else 30))
    for name, text in sorted(formulas.corpus().items()):
        bound = _CORPUS_BOUND[name]
        if quick:
            bound = min(bound, 6)
        elif thorough:
            bound += 1
        reports.append(corpus_report(name, text, max_card=bound,
                                     slacks=(0, 1) if quick else (0, 1, 2, 3)))
    reports.append(embed_report('embed-chain-5', FinitePoset.chain(5),
                                4 if quick else 6))
    reports.append(embed_report('embed-antichain-5', FinitePoset.antichain(5),
                                6))
    reports.append(embed_report('embed-2-crown', FinitePoset.crown(),
                                6 if quick else 8))
    reports.append(embed_report('embed-antichain-8-too-low',
                                FinitePoset.antichain(8), 4,
                                expect_found=False))
    gating = [r for r in reports if not r.informational]
    verdict = 'pass' if all(r.verdict == 'pass' for r in gating) else 'fail'
    document = {
        'schema': SCHEMA,
        'profile': profile,
        'verdict': verdict,
        'suites': [r.to_dict() for r in reports],
    }
    return document, (0 if verdict == 'pass' else 1)
