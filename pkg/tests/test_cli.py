import json

import pytest

from hermlab.cli import (EXIT_INVALID_MODEL, EXIT_MODEL_FILE, EXIT_OK,
                         EXIT_SUITE_FAILURE, _join_negative_values, main)
from hermlab.fs import fs_factory


def test_report_zoo_model(capsys):
    code = main(['report', 'zoo:hopf3', '--t', '2',
                 '--check', 'btp,vaisman,bismut_flat'])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    for section in ('== Model ==', '== Predicates ==', '== Ricci ==',
                    '== Identities ==', '== Decomposition ==',
                    '== Holonomy systems =='):
        assert section in out
    assert 'vaisman' in out
    assert 'kahler_like' not in out


def test_report_json(tmp_path):
    path = str(tmp_path / 'sl2c.json')
    code = main(['report', 'zoo:sl2c', '--t', '-1,1,3', '--json', path])
    assert code == EXIT_OK
    document = fs_factory(path).read_dict()
    entries = {entry['name']: entry
               for entry in document['predicates']['entries']}
    assert entries['AS(t=-1)']['holds'] is True
    assert entries['chern_flat']['holds'] is True
    assert set(document['identities']) == {'-1', '1', '3'}
    assert document['decomposition']['W'] == 3
    assert [system['t'] for system in document['holonomy']] == [-1, 1, 3]


def test_report_file_model(capsys):
    assert main(['report', 'tests/models/heisenberg.yaml', '--t', '0']) \
        == EXIT_OK
    assert 'label: heisenberg' in capsys.readouterr().out


def test_report_holonomy_system(tmp_path, capsys):
    path = str(tmp_path / 'cp2.json')
    assert main(['report', 'zoo:cp2', '--json', path]) == EXIT_OK
    assert '== Certificates ==' in capsys.readouterr().out
    document = fs_factory(path).read_dict()
    assert document['facts']['holsys.no_contradiction']['holds'] is True


@pytest.mark.parametrize('model, code', [
    ('tests/models/missing.json', EXIT_MODEL_FILE),
    ('tests/models/truncated.json', EXIT_MODEL_FILE),
    ('zoo:nothing', EXIT_MODEL_FILE),
    ('tests/models/broken_jacobi.yaml', EXIT_INVALID_MODEL),
])
def test_report_errors(model, code, capsys):
    assert main(['report', model]) == code
    assert capsys.readouterr().err


def test_verify_document(capsys, tmp_path):
    path = str(tmp_path / 'summary.json')
    assert main(['verify', 'tests/checks.yaml', '--json', path]) == EXIT_OK
    out = capsys.readouterr().out
    assert '6/6 checks passed' in out
    summary = fs_factory(path).read_dict()
    assert summary['passed'] is True
    assert all(row['worst_residual'] <= 1e-8 for row in summary['checks'])


def test_verify_failures(capsys):
    assert main(['verify', 'tests/failing_checks.json']) \
        == EXIT_SUITE_FAILURE
    assert '1/2 checks passed' in capsys.readouterr().out


def test_verify_missing_document():
    assert main(['verify', 'tests/nothing.yaml']) == EXIT_MODEL_FILE


def test_zoo_list(capsys):
    assert main(['zoo', 'list']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'hopf3' in out and 'holonomy-system' in out


def test_zoo_dump(capsys, tmp_path):
    assert main(['zoo', 'dump', 'sl2c']) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['kind'] == 'lie'
    assert document['n'] == 3

    path = str(tmp_path / 'hopf2.yaml')
    assert main(['zoo', 'dump', 'hopf2', '--output', path]) == EXIT_OK
    assert fs_factory(path).read_dict()['family'] == 'hopf'

    assert main(['zoo', 'dump', 'nothing']) == EXIT_MODEL_FILE
    assert main(['zoo', 'dump']) == EXIT_MODEL_FILE


def test_tolerance_flag_overrides_environment(monkeypatch, tmp_path):
    monkeypatch.setenv('HERMLAB_TOL', '1e-3')
    path = str(tmp_path / 'abelian.json')
    assert main(['report', 'zoo:abelian2', '--t', '1', '--tol', '1e-12',
                 '--json', path]) == EXIT_OK
    tolerances = {entry['tol'] for entry in
                  fs_factory(path).read_dict()['predicates']['entries']}
    assert tolerances == {1e-12}


def test_join_negative_values():
    assert _join_negative_values(['report', 'm', '--t', '-1,2']) == [
        'report', 'm', '--t=-1,2']
    assert _join_negative_values(['report', '--t']) == ['report', '--t']


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(['--version'])
    assert 'hermlab' in capsys.readouterr().out
