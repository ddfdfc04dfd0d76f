from hermlab.checks import ClosedForm


def test_reference_check(zoo):
    check = ClosedForm({'type': 'reference', 'points': 2, 'seed': 7})
    report = check(zoo('hopf3'))
    assert report['result'] is True
    detail = report['detail']
    assert detail['points'] == 3
    assert 'reference.bismut_curvature' in detail['worst_residual']
    assert 'predicates.AS(t=2)' in detail['worst_residual']
    assert 'fd.bismut_curvature' in detail['worst_residual']


def test_reference_check_without_finite_differences(zoo):
    check = ClosedForm({'type': 'reference', 'points': 0,
                        'finite_differences': False,
                        'predicates': ['vaisman']})
    report = check(zoo('hopf2'))
    assert report['result'] is True
    assert not any(key.startswith('fd.')
                   for key in report['detail']['worst_residual'])


def test_reference_check_skips_lie_models(zoo):
    report = ClosedForm({'type': 'reference'})(zoo('sl2c'))
    assert report['detail'] == {'skipped': 'not applicable to lie'}
