import pytest

from hermlab import validate
from hermlab.checks import Predicate
from hermlab.exceptions import ValidationError


def test_predicates_check(zoo):
    check = Predicate({'type': 'predicates', 't_values': '-1,2',
                       'expect': {'btp': True, 'chern_flat': True,
                                  'AS(t=-1)': True, 'kahler': False}})
    report = check(zoo('sl2c'))
    assert report['result'] is True
    assert set(report['detail']) >= {'AS(t=-1)', 'AS(t=2)', 'cyt'}
    assert report['detail']['kahler']['residual'] > 1e-3
    assert report['worst_residual'] <= 1e-9


def test_predicates_check_fails(zoo):
    check = Predicate({'type': 'predicates', 't_values': [],
                       'expect': {'kahler': True}})
    assert check(zoo('nilpotent3'))['result'] is False


def test_unknown_predicate(zoo):
    check = Predicate({'type': 'predicates', 't_values': [],
                       'expect': {'hyperkahler': True}})
    with pytest.raises(KeyError):
        check(zoo('abelian2'))


def test_unexpected_option():
    with pytest.raises(ValueError):
        Predicate({'type': 'predicates', 'at_least_%': 90})


def test_predicates_skip_holonomy_systems(zoo):
    report = Predicate({'type': 'predicates'})(zoo('flat4'))
    assert report['result'] is True
    assert 'skipped' in report['detail']


def test_hopf_predicates_document():
    document = {
        'name': 'hopf_predicates',
        'items': [{
            'model': 'zoo:hopf3',
            'checks': [{
                'type': 'predicates',
                't_values': [2],
                'expect': {'btp': True, 'AS(t=2)': True, 'vaisman': True,
                           'bismut_flat': False},
            }],
        }],
    }
    result = validate(document)
    assert result['items'][0]['checks'][0]['report']['result'] == 'pass'

    document['items'][0]['checks'][0]['expect']['bismut_flat'] = True
    with pytest.raises(ValidationError):
        validate(document)
