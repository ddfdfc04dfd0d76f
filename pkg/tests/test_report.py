import numpy
import pytest

from hermlab.checks import BaseCheck
from hermlab.numlin import ToleranceContext
from hermlab.report import ConditionReport, to_plain, worst_residual


@pytest.fixture
def report():
    report = ConditionReport('sample', ToleranceContext(abs_tol=1e-6))
    report.add('zero', numpy.zeros((2, 2)))
    report.add('large', numpy.array([[0, 3], [-4j, 1]]), note='x')
    report.add('vacuous', 10.0, hypothesis=False)
    report.add('loose', 0.1, tol=0.5)
    return report


def test_verdicts(report):
    assert report.holds('zero')
    assert not report.holds('large')
    assert report['vacuous'].holds and report['vacuous'].vacuous
    assert report.holds('loose')
    assert not report.all_hold
    assert [e.name for e in report.failures()] == ['large']


def test_witness_and_residual(report):
    entry = report['large']
    assert entry.residual == 4
    assert entry.witness == (1, 0)
    assert entry.detail == {'note': 'x'}
    assert report['vacuous'].witness is None


def test_lookup(report):
    assert 'zero' in report
    assert 'missing' not in report
    with pytest.raises(KeyError):
        report['missing']


def test_extend_with_prefix(report):
    other = ConditionReport('other')
    other.extend(report, prefix='inner.')
    assert [e.name for e in other][:2] == ['inner.zero', 'inner.large']
    assert len(other) == len(report)


def test_to_frame(report):
    frame = report.to_frame()
    assert list(frame.columns) == ['condition', 'holds', 'residual', 'tol',
                                   'vacuous']
    assert frame['holds'].tolist() == [True, False, True, True]


def test_to_dict_is_plain(report):
    document = report.to_dict()
    assert document['title'] == 'sample'
    large = document['entries'][1]
    assert large['witness'] == [1, 0]
    assert isinstance(large['residual'], float)


def test_to_plain():
    value = {'a': numpy.array([1.5, 2.0]), 1: (numpy.int64(3), 2 + 1j),
             'b': numpy.bool_(True)}
    assert to_plain(value) == {'a': [1.5, 2.0], '1': [3, [2.0, 1.0]],
                               'b': True}


def test_worst_residual():
    detail = {'a': {'residual': 1e-3, 'holds': True},
              'b': [{'residual': float('nan')}, {'worst_residual': 2.0}],
              'c': {'relative_residual': {'x': 0.5, 'y': True}}}
    assert worst_residual(detail) == 2.0
    assert worst_residual({'skipped': 'not applicable'}) == 0.0


def test_worst_residual_skips_vacuous_conditions():
    report = ConditionReport('conditional', ToleranceContext(abs_tol=1e-9))
    report.add('identity', 1e-12, hypothesis=True)
    report.add('conditional_identity', 12.0, hypothesis=False)
    summary = BaseCheck.summarize(report)
    assert report.all_hold
    assert worst_residual(summary) == 1e-12
    assert worst_residual([summary, {'residual': 1e-6}]) == 1e-6
