"""Certification harness: reports, variant resolution, reconstruction,
automorphisms, poset embedding, corpus and aggregate runs, CLI."""

import json

import pytest

from young_defined import cli, harness
from young_defined.catalog import all_pairs
from young_defined.partitions import parse_partition, render


# --- reports

def test_check_proposition_passes_on_a_sound_pair():
    report = harness.check_proposition('lemma-3.1-total', 10)
    assert report.verdict == 'pass'
    assert report.mismatch_count == 0
    assert report.total_checked == 139           # p(0) + ... + p(10)
    doc = report.to_dict()
    assert doc['schema'] == 'young-defined/1'
    assert doc['verdict'] == 'pass'
    assert 'lemma-3.1-total' in report.summary_line()


def test_reports_are_deterministic_up_to_elapsed_time():
    def snapshot():
        doc = harness.check_proposition('prop-3.9-add', 8, slack=1).to_dict()
        del doc['elapsedSeconds']
        return json.dumps(doc, sort_keys=True)
    assert snapshot() == snapshot()


def test_unknown_pair_name_is_a_usage_error():
    with pytest.raises(harness.UsageError):
        harness.check_proposition('prop-9.9-missing', 8)


def test_informational_pair_reports_its_disagreements():
    report = harness.check_proposition('prop-3.6-part-of-a', 8)
    assert report.informational
    assert report.verdict == 'fail'
    assert report.mismatch_count > 0
    assert len(report.witnesses) <= harness.WITNESS_CAP
    assert report.to_dict()['informational'] is True


def test_boundary_tuples_are_reported_but_not_counted():
    report = harness.check_proposition('prop-3.9-add', 8)
    assert report.verdict == 'pass'
    assert report.mismatch_count == 0
    assert report.boundary_count > 0
    for witness in report.boundary_witnesses:
        assert 'identity triple' in witness['reason']
        assert '0' in witness['args'][:2]


def test_witness_cap_applies():
    report = harness.check_proposition('prop-3.6-part-of-a', 14)
    assert report.mismatch_count > harness.WITNESS_CAP
    assert len(report.witnesses) == harness.WITNESS_CAP


# --- variant resolution

def test_variant_resolution_prefers_the_surviving_reading():
    a = harness.check_proposition('prop-3.6-part-of-a', 8)
    b = harness.check_proposition('prop-3.6-part-of-b', 8)
    combined = harness.variant_resolution(a, b)
    assert combined.verdict == 'pass'
    assert combined.details['passing'] == ['prop-3.6-part-of-b']


def test_variant_resolution_rejects_two_survivors():
    a = harness.check_proposition('lemma-3.1-total', 6)
    b = harness.check_proposition('lemma-3.1-trivial', 6)
    combined = harness.variant_resolution(a, b)
    assert combined.verdict == 'fail'
    assert sorted(combined.details['passing']) == ['lemma-3.1-total',
                                                   'lemma-3.1-trivial']


# --- reconstruction

def test_reconstruction_from_lower_covers():
    report = harness.reconstruction_check(12)
    assert report.verdict == 'pass'
    assert report.mismatch_count == 0
    assert report.details['level2Collision'] == [['2[1]', '[2]']]
    assert report.details['level3Injective']


def test_reconstruction_needs_enough_levels():
    with pytest.raises(harness.UsageError):
        harness.reconstruction_check(3)


# --- automorphisms

def test_automorphism_counts_by_rank():
    assert len(harness.automorphism_search(1)) == 1
    maps = harness.automorphism_search(4)
    assert len(maps) == 2
    kinds = {harness.classify_automorphism(m) for m in maps}
    assert kinds == {'identity', 'conjugation'}


def test_automorphism_report():
    report = harness.automorphism_report(6)
    assert report.verdict == 'pass'
    assert report.details == {'count': 2, 'kinds': ['conjugation', 'identity']}


def test_automorphism_rank_ceiling():
    from young_defined.partitions import ResourceLimit
    with pytest.raises(ResourceLimit):
        harness.automorphism_search(harness.AUTOMORPHISM_RANK_CEILING + 1)
    with pytest.raises(harness.UsageError):
        harness.automorphism_search(-1)


# --- finite posets

def test_poset_parse_and_closure():
    poset = harness.FinitePoset.parse(
        "# a three chain with a side element\n"
        "elem a\nelem b\nelem c\nelem side\n"
        "lt a b\nlt b c\n")
    assert ('a', 'c') in poset.less          # transitive closure
    assert ('side', 'a') not in poset.less
    assert len(poset.elements) == 4


@pytest.mark.parametrize('text', [
    "elem a\nelem a\n",                      # duplicate
    "elem a\nlt a b\n",                      # undeclared
    "elem a\nelem b\nlt a b\nlt b a\n",      # cycle
    "elem a\nwat a b\n",                     # bad keyword
    "elem a b c\n",                          # wrong arity
])
def test_poset_parse_rejections(text):
    with pytest.raises(harness.UsageError):
        harness.FinitePoset.parse(text)


def test_poset_factories():
    chain = harness.FinitePoset.chain(4)
    assert len(chain.less) == 6              # all ordered pairs of a 4-chain
    assert harness.FinitePoset.antichain(5).less == set()
    crown = harness.FinitePoset.crown()
    assert ('a', 'c') in crown.less and ('a', 'b') not in crown.less


# --- embedding

def test_embed_chain_and_verify():
    poset = harness.FinitePoset.chain(5)
    mapping = harness.embed_poset(poset, 6)
    assert mapping is not None
    harness.verify_embedding(poset, mapping)


def test_embed_crown():
    poset = harness.FinitePoset.crown()
    mapping = harness.embed_poset(poset, 8)
    harness.verify_embedding(poset, mapping)


def test_embed_not_found_when_the_bound_is_too_low():
    assert harness.embed_poset(harness.FinitePoset.antichain(8), 4) is None


def test_verify_embedding_rejects_bad_maps():
    poset = harness.FinitePoset.chain(2)
    with pytest.raises(RuntimeError):
        harness.verify_embedding(poset, {'e1': parse_partition('[1]'),
                                         'e2': parse_partition('[1]')})
    with pytest.raises(RuntimeError):
        harness.verify_embedding(poset, {'e1': parse_partition('[2]'),
                                         'e2': parse_partition('2[1]')})


def test_embed_report_both_expectations():
    found = harness.embed_report('embed-chain-3', harness.FinitePoset.chain(3), 4)
    assert found.verdict == 'pass' and found.details['found']
    images = [parse_partition(found.details['mapping']['e%d' % i])
              for i in (1, 2, 3)]
    assert images[0].card < images[1].card < images[2].card
    absent = harness.embed_report('embed-antichain-8-too-low',
                                  harness.FinitePoset.antichain(8), 4,
                                  expect_found=False)
    assert absent.verdict == 'pass' and not absent.details['found']
    assert 'does not refute' in absent.details['statement']


# --- corpus and arithmetization suites

def test_corpus_report_passes_each_bundled_formula():
    from young_defined import formulas
    for name, text in sorted(formulas.corpus().items()):
        report = harness.corpus_report(name, text, max_card=5, slacks=(0, 1, 2))
        assert report.verdict == 'pass', report.to_json()
        assert report.details['flipCount'] == 0


def test_corpus_report_catches_a_swapped_formula():
    report = harness.corpus_report('cover', 'x <= y & x != y', max_card=5)
    assert report.verdict == 'fail'
    problems = {w['problem'] for w in report.witnesses}
    assert 'classification drifted' in problems
    assert 'disagrees with the oracle set' in problems


def test_arithmetization_report():
    report = harness.arithmetization_report(
        max_card=8, integer_ceiling=10 ** 4, pair_card=8, bridge_bound=10)
    assert report.verdict == 'pass'
    assert report.mismatch_count == 0
    assert report.total_checked > 10 ** 4


# --- the aggregate

def test_check_all_quick_profile():
    document, code = harness.check_all('quick')
    assert code == 0
    assert document['verdict'] == 'pass'
    assert document['schema'] == 'young-defined/1'
    names = [suite['propositionName'] for suite in document['suites']]
    assert len(names) == len(set(names))
    registered = {pair.name for pair in all_pairs()}
    assert registered <= set(names)
    for suite in document['suites']:
        if not suite.get('informational'):
            assert suite['verdict'] == 'pass', suite['propositionName']
    json.dumps(document)                     # must be serializable as is


def test_check_all_rejects_unknown_profiles():
    with pytest.raises(harness.UsageError):
        harness.check_all('exhaustive')


# --- command line

def run_cli(*argv):
    return cli.main(list(argv))


def test_cli_enumerate(capsys):
    assert run_cli('enumerate', '--max-card', '6') == 0
    out = capsys.readouterr().out
    assert 'level  6: 11 partitions' in out
    assert 'total: 30' in out


def test_cli_check_prop_json(capsys):
    assert run_cli('check-prop', 'lemma-3.2-rectangular',
                   '--max-card', '8', '--json') == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['verdict'] == 'pass'
    assert doc['schema'] == 'young-defined/1'


def test_cli_check_prop_failure_exit_code(capsys):
    assert run_cli('check-prop', 'prop-3.6-part-of-a', '--max-card', '8') == 1
    assert 'FAIL' in capsys.readouterr().out


def test_cli_usage_errors_exit_2(capsys):
    assert run_cli('check-prop', 'no-such-pair', '--max-card', '8') == 2
    assert capsys.readouterr().err.startswith('error:')
    assert run_cli('decode', '-5') == 2
    assert run_cli('encode', '[oops]') == 2


def test_cli_eval(tmp_path, capsys):
    path = tmp_path / 'query.fol'
    path.write_text('const c11 = [1]+[1];\nforall y (y <= x -> y <= c11 | c11 <= y)\n')
    assert run_cli('eval', '--formula', str(path), '--assign', 'x=2[1]',
                   '--max-card', '6', '--slack', '1') == 0
    out = capsys.readouterr().out
    assert 'class: Pi1' in out
    assert 'value: True' in out
    assert run_cli('eval', '--formula', str(path), '--assign', 'x=[3]',
                   '--max-card', '6', '--slack', '1') == 0
    assert 'value: False' in capsys.readouterr().out
    assert run_cli('eval', '--formula', str(path), '--assign', 'x:[3]',
                   '--max-card', '6') == 2


def test_cli_eval_missing_file(capsys):
    assert run_cli('eval', '--formula', '/nonexistent/q.fol',
                   '--max-card', '5') == 2
    assert 'error:' in capsys.readouterr().err


def test_cli_embed(tmp_path, capsys):
    path = tmp_path / 'poset.txt'
    path.write_text('elem a\nelem b\nlt a b\n')
    assert run_cli('embed', '--poset', str(path), '--max-card', '3') == 0
    out = capsys.readouterr().out
    assert 'a ->' in out and 'b ->' in out
    big = tmp_path / 'antichain.txt'
    big.write_text(''.join('elem a%d\n' % i for i in range(8)))
    assert run_cli('embed', '--poset', str(big), '--max-card', '4') == 1
    assert 'not found' in capsys.readouterr().out


def test_cli_encode_decode_roundtrip(capsys):
    assert run_cli('encode', '2[3]+[1]') == 0
    code = capsys.readouterr().out.strip()
    assert code == '50'
    assert run_cli('decode', code) == 0
    assert capsys.readouterr().out.strip() == render(parse_partition('2[3]+[1]'))


def test_cli_reconstruct_and_automorphisms(capsys):
    assert run_cli('reconstruct', '--max-card', '8') == 0
    assert run_cli('automorphisms', '--max-rank', '4') == 0
    out = capsys.readouterr().out
    assert 'conjugation, identity' in out
