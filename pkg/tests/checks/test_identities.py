from hermlab.checks import Identities


def test_identities_check(zoo):
    check = Identities({'type': 'identities', 't_values': [1, 2],
                        'tol': 1e-8})
    report = check(zoo('hopf2'))
    assert report['result'] is True
    assert list(report['detail']) == ['t=1', 't=2']
    assert 'bismut_chern_difference' in report['detail']['t=2']


def test_identities_only(zoo):
    check = Identities({'type': 'identities', 'only': ['b_phi']})
    assert check.result({'t=1': {'b_phi': {'holds': True},
                                 'not_fano': {'holds': False}}})
    assert not check.result({'t=1': {'b_phi': {'holds': False}}})


def test_identities_worst_residual_skips_vacuous_entries(zoo):
    check = Identities({'type': 'identities', 'tol': 1e-8})
    report = check(zoo('hopf3'))
    assert report['result'] is True
    vacuous = [entry['residual'] for conditions in report['detail'].values()
               for entry in conditions.values() if entry['vacuous']]
    assert vacuous and max(vacuous) > 1e-8
    assert report['worst_residual'] <= 1e-8


def test_identities_worst_residual_follows_only():
    check = Identities({'type': 'identities', 'only': ['b_phi']})
    report = {'t=1': {'b_phi': {'holds': True, 'residual': 1e-12},
                      'not_fano': {'holds': False, 'residual': 3.0}}}
    assert check.worst_residual(report) == 1e-12
