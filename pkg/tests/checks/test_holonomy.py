import pytest

from hermlab.checks import Holonomy


def test_holonomy_check_on_system(zoo):
    check = Holonomy({'type': 'holonomy',
                      'expect': {'valid': True, 'irreducible': True,
                                 'lambda_nonzero': True, 'kostant': True,
                                 'flat': False}})
    report = check(zoo('cp2'))
    assert report['result'] is True
    assert report['detail']['system']['holonomy_dim'] == 4
    assert report['detail']['system']['generalized'] is False


def test_holonomy_check_default_facts(zoo):
    report = Holonomy({'type': 'holonomy'})(zoo('flat4'))
    assert report['result'] is True
    assert report['detail']['facts']['flat']['holds'] is True


def test_holonomy_check_on_chern_flat_model(zoo):
    check = Holonomy({'type': 'holonomy', 'connection': 'chern',
                      'expect': {'flat': True}})
    assert check(zoo('complex_heisenberg'))['result'] is True


def test_holonomy_check_with_torsion(zoo):
    check = Holonomy({'type': 'holonomy', 'connection': 'bismut',
                      'expect': {'valid': True}})
    report = check(zoo('samelson_u2'))
    assert report['detail']['system']['generalized'] is True
    assert 'torsion_skew' in report['detail']['hypotheses']


def test_unexpected_fact_fails(zoo):
    check = Holonomy({'type': 'holonomy', 'expect': {'flat': True}})
    assert check(zoo('sphere3'))['result'] is False


@pytest.mark.parametrize('name', ['flat4', 'cp2', 'complex_heisenberg',
                                  'abelian2'])
def test_holonomy_worst_residual_is_finite(zoo, name):
    report = Holonomy({'type': 'holonomy'})(zoo(name))
    assert report['result'] is True
    assert report['worst_residual'] < 1e-6


def test_holonomy_facts_keep_values_apart(zoo):
    facts = Holonomy({'type': 'holonomy'})(zoo('cp2'))['detail']['facts']
    assert 'residual' not in facts['lambda_nonzero']
    assert facts['lambda_nonzero']['value'] != 0
    assert facts['flat']['value'] > 0.1
    assert 'residual' not in facts['irreducible']
    assert 'residual' in facts['killing']
