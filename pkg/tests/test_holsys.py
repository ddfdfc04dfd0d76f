import numpy
import pytest
from numpy.testing import assert_allclose

from hermlab import holsys
from hermlab.exceptions import (HypothesisUnmet, InvalidModel, NotParallel,
                                Reducible)
from hermlab.holsys import (HolonomySystem, ak_certificate,
                            certificate_hypotheses, from_model,
                            is_irreducible, killing_checks,
                            kostant_reconstruction, nomizu, ricci_tensor,
                            schur_lambda, validate_system)
from hermlab.liegeom.connections import TorsionTensor
from hermlab.zoo import symmetric_space_system


def sphere_product():
    curvature = symmetric_space_system('sphere', 3).Rm
    Rm = numpy.zeros((6,) * 4)
    Rm[:3, :3, :3, :3] = curvature
    Rm[3:, 3:, 3:, 3:] = curvature
    return HolonomySystem(6, numpy.eye(6), Rm, label='sphere3xsphere3')


def test_shapes_are_checked():
    with pytest.raises(InvalidModel):
        HolonomySystem(3, numpy.eye(2), numpy.zeros((3,) * 4))
    with pytest.raises(InvalidModel):
        HolonomySystem(2, numpy.eye(2), numpy.zeros((2,) * 4),
                       T=numpy.zeros((2, 2)))


def test_unknown_symmetric_space():
    with pytest.raises(ValueError):
        symmetric_space_system('hyperbolic', 3)


@pytest.mark.parametrize('name', ['sphere3', 'cp2', 'flat4'])
def test_symmetric_spaces_are_valid(zoo, name):
    system = zoo(name).model
    assert validate_system(system).all_hold
    algebra = nomizu(system)
    assert algebra.jacobi_residual < 1e-10
    assert algebra.total_dim == system.dim + len(system.g_basis)
    assert killing_checks(algebra, system).all_hold
    assert is_irreducible(system)


def test_holonomy_dimensions(zoo):
    assert len(zoo('sphere3').model.g_basis) == 3
    assert len(zoo('cp2').model.g_basis) == 4
    assert zoo('flat4').model.g_basis == []


def test_sphere_ricci_and_schur(zoo):
    system = zoo('sphere3').model
    assert_allclose(ricci_tensor(system), 2 * numpy.eye(3), atol=1e-12)
    algebra = nomizu(system)
    value, deviation = schur_lambda(algebra, system)
    assert value != pytest.approx(0)
    assert deviation < 1e-10
    _, residual = kostant_reconstruction(algebra, system)
    assert residual < 1e-9


def test_ak_certificate(zoo):
    certificate = ak_certificate(zoo('cp2').model)
    assert not certificate.flat
    assert not certificate.contradiction
    assert certificate.lam is not None
    assert certificate.certificate.all_hold

    flat = ak_certificate(zoo('flat4').model)
    assert flat.flat
    assert not flat.contradiction


def test_reducible_system():
    system = sphere_product()
    assert not is_irreducible(system)
    with pytest.raises(Reducible):
        schur_lambda(nomizu(system), system)
    certificate = ak_certificate(system)
    assert len(certificate.blocks) == 2
    assert not certificate.flat
    assert not certificate.contradiction
    assert certificate.to_dict()['blocks'][0]['flat'] is False


def test_kostant_needs_torsion_free(zoo):
    sphere = zoo('sphere3').model
    T = numpy.zeros((3, 3, 3))
    T[0, 1, 2] = T[1, 2, 0] = T[2, 0, 1] = 1
    T[1, 0, 2] = T[2, 1, 0] = T[0, 2, 1] = -1
    system = HolonomySystem(3, numpy.eye(3), sphere.Rm, T)
    assert system.is_generalized
    with pytest.raises(HypothesisUnmet):
        kostant_reconstruction(nomizu(sphere), system)


def test_orthonormal_is_identity_on_orthonormal_systems(zoo):
    system = zoo('sphere3').model
    assert system.orthonormal() is system


def test_from_chern_connection(zoo):
    system = from_model(zoo('sl2c').model, 'chern')
    assert system.dim == 6
    assert not system.is_generalized
    assert_allclose(system.Rm, 0, atol=1e-9)
    assert_allclose(system.J @ system.J, -numpy.eye(6), atol=1e-12)


def test_from_model_needs_parallel_torsion(zoo, monkeypatch):
    covariant_derivative = holsys.covariant_derivative

    def drifting_torsion(model, connection, tensor, *args):
        nabla = covariant_derivative(model, connection, tensor, *args)
        if isinstance(tensor, TorsionTensor):
            return nabla.map(lambda p: p + 1e-3)
        return nabla

    monkeypatch.setattr(holsys, 'covariant_derivative', drifting_torsion)
    with pytest.raises(NotParallel, match='Torsion'):
        from_model(zoo('sl2c').model, 'chern')


def test_from_bismut_connection(zoo):
    system = from_model(zoo('samelson_u2').model, 'bismut')
    assert system.dim == 4
    assert system.is_generalized
    assert certificate_hypotheses(system).holds('torsion_skew')
