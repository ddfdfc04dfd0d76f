from hermlab.checks import Expectations
from hermlab.parser import entry_reader


def test_expectations_check(zoo):
    report = Expectations({'type': 'expectations'})(zoo('hopf2'))
    assert report['result'] is True
    assert 'reference.bismut_curvature' in report['detail']


def test_expectations_provenance(zoo):
    check = Expectations({'type': 'expectations',
                          'provenance': ['TRIVIAL']})
    report = check(zoo('abelian2'))
    assert report['result'] is True
    assert set(report['detail']) == {'kahler', 'chern_flat', 'W_dim'}


def test_file_models_pass_trivially():
    entry = entry_reader('tests/models/heisenberg.yaml')
    report = Expectations({'type': 'expectations'})(entry)
    assert report == {'detail': {}, 'result': True, 'worst_residual': 0.0}
