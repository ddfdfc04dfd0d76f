import pytest

from hermlab.checks import AdmissibleFrameCheck


@pytest.mark.parametrize('name', ['hopf2', 'hopf3', 'hopf4'])
def test_admissible_frame_check(zoo, name):
    check = AdmissibleFrameCheck({'type': 'admissible_frame', 'tol': 1e-8})
    report = check(zoo(name))
    assert report['result'] is True
    assert report['worst_residual'] <= 1e-8
    assert report['detail']['exists'] is True
    assert len(report['detail']['b']) == zoo(name).model.n - 1


def test_balanced_model_has_no_frame(zoo):
    check = AdmissibleFrameCheck({'type': 'admissible_frame',
                                  'expect_frame': False})
    report = check(zoo('sl2c'))
    assert report['result'] is True
    assert report['detail'] == {'exists': False, 'reason': 'Balanced'}
    strict = AdmissibleFrameCheck({'type': 'admissible_frame'})
    assert strict(zoo('sl2c'))['result'] is False
