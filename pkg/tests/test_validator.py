import os
from datetime import datetime

import pytest

from hermlab import validate
from hermlab.checks import CHECKS_MAP
from hermlab.enums import SeverityLevel
from hermlab.exceptions import ModelFileError, ValidationError
from hermlab.fs import fs_factory
from hermlab.numlin import ToleranceContext
from hermlab.validator import SUITES, suite_path
from hermlab.zoo import zoo_entry, zoo_names


def test_validation_from_yaml():
    result = validate('tests/checks.yaml')
    assert [item['model'] for item in result['items']] == [
        'tests/models/heisenberg.yaml', 'zoo:abelian2', 'zoo:flat4']
    reports = [check['report'] for item in result['items']
               for check in item['checks']]
    assert all(report['result'] == 'pass' for report in reports)
    skipped = result['items'][2]['checks'][1]['report']['detail']
    assert 'skipped' in skipped


def test_template_rendering():
    result = validate('tests/checks.yaml',
                      ctx=ToleranceContext(abs_tol=1e-7))
    check = result['items'][1]['checks'][1]
    assert check['tol'] == pytest.approx(1e-6)


def test_models_filter():
    result = validate('tests/checks.yaml', models=['zoo:flat4'])
    assert [item['model'] for item in result['items']] == ['zoo:flat4']


def test_severity_levels():
    result = validate('tests/failing_checks.json')
    results = [check['report']['result']
               for check in result['items'][0]['checks']]
    assert results == ['fail', 'pass']

    with pytest.raises(ValidationError) as e:
        validate('tests/failing_checks.json',
                 exception_level=SeverityLevel.WARNING)
    assert e.value.level == 3


def test_custom_check():
    document = {
        'name': 'custom',
        'items': [{
            'model': ['zoo:sl2c', 'zoo:abelian2'],
            'checks': [{
                'type': 'custom',
                'location': 'tests/custom_check.py::BracketNormBelowX',
                'x': 10,
            }],
        }],
    }
    result = validate(document)
    for item in result['items']:
        report = item['checks'][0]['report']
        assert report['result'] == 'pass'
        assert report['detail']['bracket_norm'] < 10


@pytest.mark.parametrize('check, exception', [
    ({'type': 'custom'}, KeyError),
    ({'type': 'custom', 'location': 'tests/custom_check.py'}, ValueError),
    ({'type': 'custom', 'location': 'tests/custom_check.py::NotACheck'},
     ImportError),
    ({'type': 'curvature_pinching'}, NotImplementedError),
])
def test_bad_check_declarations(check, exception):
    document = {'name': 'bad',
                'items': [{'model': 'zoo:abelian2', 'checks': [check]}]}
    with pytest.raises(exception):
        validate(document)


def test_errors_inside_checks_fail_the_check():
    document = {'name': 'unknown_predicate',
                'items': [{'model': 'zoo:abelian2',
                           'checks': [{'type': 'predicates', 't_values': [],
                                       'expect': {'hyperkahler': True}}]}]}
    result = validate(document, raise_exception=False)
    report = result['items'][0]['checks'][0]['report']
    assert report['result'] == 'fail'
    assert report['detail']['error'].startswith('KeyError')


def test_missing_model():
    document = {'name': 'missing',
                'items': [{'model': 'zoo:nothing', 'checks': []}]}
    with pytest.raises(ModelFileError):
        validate(document)


def test_all_zoo_expansion():
    document = {'name': 'all', 'items': [{'model': 'zoo:*', 'checks': []}]}
    result = validate(document)
    assert [item['model'] for item in result['items']] == [
        f'zoo:{name}' for name in zoo_names()]


def test_save_to(results_folder):
    validate('tests/checks.yaml', save_to=results_folder,
             current_date=datetime(2021, 3, 4, 5, 6, 7))
    path = os.path.join(results_folder, 'small', '20210304T050607.yaml')
    saved = fs_factory(path).read_dict()
    assert saved['name'] == 'small'
    assert saved['items'][0]['checks'][0]['report']['result'] == 'pass'


def test_save_to_without_date(results_folder):
    with pytest.warns(Warning):
        validate('tests/failing_checks.json', save_to=results_folder)
    assert len(os.listdir(os.path.join(results_folder, 'failing'))) == 1


def test_save_to_must_exist(tmp_path):
    with pytest.raises(ValueError):
        validate('tests/checks.yaml', save_to=str(tmp_path / 'nowhere'))


def test_bundled_suites_are_well_formed():
    for suite in SUITES:
        document = fs_factory(suite_path(suite)).read_dict()
        assert document['name'] == suite
        for item in document['items']:
            models = item['model']
            for model in models if isinstance(models, list) else [models]:
                if model != 'zoo:*':
                    zoo_entry(model)
            for check in item['checks']:
                assert check['type'] in CHECKS_MAP
    with pytest.raises(KeyError):
        suite_path('everything')
