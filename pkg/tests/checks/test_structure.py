import pytest

from hermlab.checks import FrameCovariance, StructuralProperties
from hermlab.checks.covariance import invariants
from hermlab.liegeom import ModelGeometry


@pytest.mark.parametrize('name', ['almost_abelian_ric3', 'hopf3',
                                  'samelson_u2'])
def test_structural_properties(zoo, name):
    check = StructuralProperties({'type': 'structure', 'tol': 1e-8})
    report = check(zoo(name))
    assert report['result'] is True
    assert set(report['detail']) == {'chern_type', 'd_squared',
                                     'levi_civita_torsion_free',
                                     'holonomy_blocks'}
    sizes = report['detail']['holonomy_blocks']['sizes']
    assert sum(sizes) == zoo(name).model.n


@pytest.mark.parametrize('name', ['almost_abelian_ric3', 'nilpotent3',
                                  'sl2c'])
def test_frame_covariance(zoo, name):
    check = FrameCovariance({'type': 'covariance', 'trials': 3, 'seed': 1})
    report = check(zoo(name))
    assert report['result'] is True
    assert report['detail']['flipped_predicates'] == []


def test_frame_covariance_skips_pointwise_models(zoo):
    report = FrameCovariance({'type': 'covariance'})(zoo('hopf2'))
    assert report['result'] is True


def test_invariants(zoo):
    values = invariants(ModelGeometry(zoo('abelian2').model))
    assert values['torsion_norm_sq'] == 0
    assert values['chern_curvature_norm'] == 0
