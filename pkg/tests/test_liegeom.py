import numpy
import pytest
from numpy.testing import assert_allclose

from hermlab.exceptions import Balanced, InvalidModel, JacobiViolation
from hermlab.liegeom import (ModelGeometry, ce_differential,
                             check_curvature_identities, kahler_form,
                             predicates)
from hermlab.liegeom.connections import torsion_of
from hermlab.liegeom.curvature import riemannian_ricci, unitary_ricci
from hermlab.liegeom.frames import admissible_frame
from hermlab.liegeom.models import (LieHermitianModel, apply_frame_change,
                                    direct_sum)
from hermlab.numlin import FrameChange, ToleranceContext, conjugate_index
from hermlab.zoo import zoo_names

LIE_MODELS = ['almost_abelian_ric3', 'almost_abelian_flat',
              'almost_abelian_nonunimodular', 'nilpotent3', 'sl2c',
              'samelson_u2', 'complex_heisenberg', 'abelian2',
              'sl2c+abelian1']
POINTWISE_MODELS = ['hopf2', 'hopf3', 'hopf4', 'hopf3r']
HERMITIAN_MODELS = LIE_MODELS + POINTWISE_MODELS
LOOSE = ToleranceContext(abs_tol=1e-8)


def non_jacobi_model():
    C = numpy.zeros((3, 3, 3))
    C[0, 1, 2], C[1, 0, 2] = 1, -1
    C[1, 2, 1], C[2, 1, 1] = 1, -1
    return LieHermitianModel(3, C, numpy.zeros((3, 3, 3)), label='broken')


def test_model_lists_cover_the_zoo():
    systems = {'cp2', 'sphere3', 'flat4'}
    assert sorted(HERMITIAN_MODELS) == sorted(set(zoo_names()) - systems)


def test_model_shape_is_checked():
    with pytest.raises(InvalidModel):
        LieHermitianModel(2, numpy.zeros((2, 2, 2)), numpy.zeros((3, 3, 3)))


def test_jacobi_violation():
    model = non_jacobi_model()
    assert model.residuals()['jacobi'] > 0.5
    with pytest.raises(JacobiViolation):
        model.validate()


def test_from_bracket_round_trip(zoo):
    model = zoo('almost_abelian_ric3').model
    rebuilt = LieHermitianModel.from_bracket(model.bracket)
    assert_allclose(rebuilt.C, model.C, atol=1e-14)
    assert_allclose(rebuilt.D, model.D, atol=1e-14)


def test_direct_sum(zoo):
    total = direct_sum(zoo('sl2c').model, zoo('abelian2').model)
    assert total.n == 5
    assert total.label == 'sl2c+abelian2'
    total.validate()


def test_apply_frame_change_keeps_torsion_norm(zoo):
    model = zoo('almost_abelian_ric3').model
    change = FrameChange.random_unitary(model.n, numpy.random.default_rng(3))
    moved = apply_frame_change(model, change)
    assert moved.residuals()['jacobi'] < 1e-12
    assert ModelGeometry(moved).derived.torsion_norm_sq == pytest.approx(
        ModelGeometry(model).derived.torsion_norm_sq)


def test_apply_frame_change_needs_lie_model(zoo):
    with pytest.raises(NotImplementedError):
        apply_frame_change(zoo('hopf2').model, FrameChange.identity(2))


@pytest.mark.parametrize('name', HERMITIAN_MODELS)
def test_canonical_connections(zoo, name):
    geometry = ModelGeometry(zoo(name).model)
    n = geometry.n
    for t in (0.0, 1.0, 2.0, -1.0):
        connection = geometry.gauduchon(t)
        assert connection.metric_defect() < 1e-9
        assert connection.type_defect() < 1e-9
    assert_allclose(geometry.torsion.full.value[:n, n:], 0, atol=1e-9)
    assert_allclose(geometry.curvature('chern').part('2,0'), 0, atol=1e-9)
    assert geometry.levi_civita.metric_defect() < 1e-9
    levi_civita_torsion = torsion_of(geometry.model, geometry.levi_civita)
    assert_allclose(levi_civita_torsion.full.value, 0, atol=1e-9)


@pytest.mark.parametrize('name', HERMITIAN_MODELS)
def test_bismut_torsion_is_totally_skew(zoo, name):
    report = predicates(zoo(name).model, t_values=())
    assert report['brf_pair'].detail['skew_defect'] < 1e-9


def test_bi_invariant_levi_civita(zoo):
    model = zoo('samelson_u2').model
    geometry = ModelGeometry(model)
    assert_allclose(geometry.levi_civita.gamma.value, 0.5 * model.bracket,
                    atol=1e-12)


def test_abelian_predicates(zoo):
    report = predicates(zoo('abelian2').model, t_values=(1.0,))
    assert report.all_hold
    assert 'AS(t=1)' in report
    assert 'AS(t=0.5)' not in report


def test_predicate_names(zoo):
    report = predicates(zoo('sl2c').model, t_values=(-1.0, 0.5))
    names = [entry.name for entry in report]
    assert names[:6] == ['kahler', 'balanced', 'pluriclosed',
                         'kahler_like(chern)', 'kahler_like(bismut)', 'btp']
    assert names[6:8] == ['AS(t=-1)', 'AS(t=0.5)']
    assert report.holds('balanced')
    assert not report.holds('kahler')
    assert report.holds('chern_flat')


@pytest.mark.parametrize('name', HERMITIAN_MODELS)
def test_bismut_kahler_like_is_btp_and_pluriclosed(zoo, name):
    report = predicates(zoo(name).model, t_values=())
    bkl = report['bkl']
    assert bkl.holds == (report.holds('btp')
                         and report.holds('pluriclosed'))
    assert bkl.detail['characterization_agrees'] is True


@pytest.mark.parametrize('name', HERMITIAN_MODELS)
@pytest.mark.parametrize('t', [-1.0, 1.0, 2.0, 3.0])
def test_identities(zoo, name, t):
    report = check_curvature_identities(zoo(name).model, t, LOOSE)
    assert report.all_hold, [e.name for e in report.failures()]


def test_identities_accept_a_geometry(zoo):
    geometry = ModelGeometry(zoo('hopf3').model)
    report = check_curvature_identities(geometry, 2.0)
    assert report.title == geometry.model.label
    assert 'bismut_chern_difference' in report


@pytest.mark.parametrize('name', ['hopf2', 'hopf3', 'hopf4'])
def test_admissible_frame_on_hopf(zoo, name):
    frame = admissible_frame(zoo(name).model, LOOSE)
    assert frame.report.all_hold
    assert frame.a.sum() == pytest.approx(frame.eta_norm)
    matrix = frame.frame.matrix
    assert_allclose(matrix @ matrix.conj().T, numpy.eye(len(matrix)),
                    atol=1e-10)


def test_admissible_frame_of_balanced_model(zoo):
    with pytest.raises(Balanced):
        admissible_frame(zoo('sl2c').model)


@pytest.mark.parametrize('name', ['sl2c', 'nilpotent3', 'hopf3'])
@pytest.mark.parametrize('t', [1.0, 2.0])
def test_gauduchon_shift_of_chern_coefficients(zoo, name, t):
    geometry = ModelGeometry(zoo(name).model)
    components = geometry.torsion.components
    connection = geometry.gauduchon(t)
    assert_allclose(connection.gamma_hol - geometry.chern.gamma_hol,
                    t / 2 * components, atol=1e-9)
    assert_allclose(connection.gamma_antihol - geometry.chern.gamma_antihol,
                    -t / 2 * numpy.einsum('jki->ikj', components.conj()),
                    atol=1e-9)


@pytest.mark.parametrize('name', ['sl2c', 'nilpotent3', 'hopf3'])
def test_sigma_b_is_a_real_2_form(zoo, name):
    sigma = ModelGeometry(zoo(name).model).derived.sigma_b()
    bar = conjugate_index(len(sigma))
    assert_allclose(sigma, -sigma.T, atol=1e-12)
    assert_allclose(sigma[bar][:, bar].conj(), sigma, atol=1e-12)


@pytest.mark.parametrize('name', HERMITIAN_MODELS)
def test_ricci_in_real_and_unitary_frames(zoo, name):
    curvature = ModelGeometry(zoo(name).model).curvature('levi_civita')
    assert_allclose(riemannian_ricci(curvature), unitary_ricci(curvature),
                    atol=1e-8)


@pytest.mark.parametrize('name', ['nilpotent3', 'sl2c', 'samelson_u2'])
def test_ce_differential_squares_to_zero(zoo, name):
    model = zoo(name).model
    d_omega = ce_differential(model, kahler_form(model.n))
    assert_allclose(ce_differential(model, d_omega), 0, atol=1e-9)
