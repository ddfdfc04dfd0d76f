import numpy
import pytest
from numpy.testing import assert_allclose

from hermlab.enums import FrameKind
from hermlab.exceptions import NotPositiveDefinite, NotUnitary
from hermlab.numlin import (Jet, ToleranceContext, alternate, approx_zero,
                            conjugate_index, invariant_subspaces,
                            jacobi_tensor, killing_form, lie_closure,
                            span_basis, unitarize, wedge, FrameChange)


def so3_structure():
    c = numpy.zeros((3, 3, 3))
    for a, b, d in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[a, b, d] = 1
        c[b, a, d] = -1
    return c


def test_tolerance_defaults_and_validation():
    ctx = ToleranceContext()
    assert (ctx.abs_tol, ctx.rel_tol, ctx.fd_tol) == (1e-9, 1e-9, 1e-6)
    with pytest.raises(ValueError):
        ToleranceContext(abs_tol=0)
    with pytest.raises(ValueError):
        ToleranceContext(fd_tol=-1e-3)


def test_tolerance_from_env(monkeypatch):
    monkeypatch.setenv('HERMLAB_TOL', '1e-6')
    assert ToleranceContext.from_env().abs_tol == 1e-6
    assert ToleranceContext.from_env(abs_tol=1e-3).abs_tol == 1e-3
    monkeypatch.delenv('HERMLAB_TOL')
    assert ToleranceContext.from_env().abs_tol == 1e-9


def test_approx_zero_scale():
    ctx = ToleranceContext(abs_tol=1e-9, rel_tol=1e-6)
    assert approx_zero([1e-10, -1e-10j], ctx)
    assert approx_zero([1e-7], ctx)
    assert not approx_zero([1e-7], ctx, scale=0.01)
    assert not approx_zero([2e-6], ctx)
    assert approx_zero([2e-6], ctx, scale=-10.0)


def test_conjugate_index():
    assert list(conjugate_index(4)) == [2, 3, 0, 1]
    assert list(conjugate_index(2)) == [1, 0]


def test_frame_change_unitary():
    rng = numpy.random.default_rng(1)
    change = FrameChange.random_unitary(3, rng)
    assert change.kind == FrameKind.UNITARY
    back = change.then(change.inverse())
    assert_allclose(back.matrix, numpy.eye(3), atol=1e-12)
    assert change.full().shape == (6, 6)
    assert_allclose(change.full()[3:, 3:], change.matrix.conj())


def test_frame_change_not_unitary():
    with pytest.raises(NotUnitary):
        FrameChange([[2, 0], [0, 1]])
    general = FrameChange([[2, 0], [0, 1]], FrameKind.GENERAL)
    assert_allclose(general.inverse().matrix, [[0.5, 0], [0, 1]])
    with pytest.raises(ValueError):
        FrameChange([1, 2, 3])


def test_unitarize():
    rng = numpy.random.default_rng(0)
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    gram = A @ A.conj().T + numpy.eye(3)
    P = unitarize(gram).matrix
    assert_allclose(P @ gram @ P.conj().T, numpy.eye(3), atol=1e-10)
    assert_allclose(numpy.triu(P, 1), 0, atol=1e-12)
    assert unitarize(numpy.eye(2)).kind == FrameKind.UNITARY


@pytest.mark.parametrize('gram', [
    [[1, 0], [0, -1]],
    [[1, 0], [0, 0]],
    [[1, 1], [0, 1]],
])
def test_unitarize_rejects(gram):
    with pytest.raises(NotPositiveDefinite):
        unitarize(gram)


def test_span_basis_and_lie_closure():
    x = numpy.array([[0, 1j], [1j, 0]])
    y = numpy.array([[0, 1], [-1, 0]], dtype=complex)
    assert len(span_basis([x, 2 * x, x + y])) == 2
    assert span_basis([numpy.zeros((2, 2))]) == []
    assert len(lie_closure([x, y])) == 3


def test_jacobi_and_killing_of_so3():
    c = so3_structure()
    assert_allclose(jacobi_tensor(c), 0, atol=1e-14)
    assert_allclose(killing_form(c), -2 * numpy.eye(3), atol=1e-12)


def test_invariant_subspaces_real_blocks():
    rotation = numpy.array([[0., -1.], [1., 0.]])
    generator = numpy.zeros((4, 4))
    generator[:2, :2] = rotation
    generator[2:, 2:] = 2 * rotation
    blocks = invariant_subspaces([generator], real=True)
    assert sorted(b.shape[1] for b in blocks) == [2, 2]
    for basis in blocks:
        projector = basis @ basis.T
        assert_allclose((numpy.eye(4) - projector) @ generator @ projector,
                        0, atol=1e-9)


def test_invariant_subspaces_without_generators():
    assert [b.shape[1] for b in invariant_subspaces([], 3)] == [1, 1, 1]
    with pytest.raises(ValueError):
        invariant_subspaces([])


def test_wedge_and_alternate():
    e0, e1 = numpy.eye(3)[0], numpy.eye(3)[1]
    form = wedge(e0, e1)
    assert form[0, 1] == 1 and form[1, 0] == -1
    assert_allclose(wedge(e1, e0), -form)
    rng = numpy.random.default_rng(0)
    tensor = rng.standard_normal((3, 3, 3))
    assert_allclose(alternate(alternate(tensor)), alternate(tensor),
                    atol=1e-12)
    assert_allclose(wedge(form, e0), 0, atol=1e-12)


def test_jet_leibniz_rule():
    rng = numpy.random.default_rng(2)
    left = Jet(rng.standard_normal(2), rng.standard_normal((4, 2)),
               rng.standard_normal((4, 4, 2)))
    right = Jet(rng.standard_normal(2), rng.standard_normal((4, 2)),
                rng.standard_normal((4, 4, 2)))
    product = Jet.einsum('a,a->', left, right)
    assert_allclose(product.value, left.value @ right.value)
    assert_allclose(product.d1, left.d1 @ right.value
                    + right.d1 @ left.value)
    expected_d2 = (left.d2 @ right.value + right.d2 @ left.value
                   + left.d1 @ right.d1.T + (left.d1 @ right.d1.T).T)
    assert_allclose(product.d2, expected_d2)


def test_jet_linear_operations():
    jet = Jet([1, 2j], numpy.ones((2, 2)), numpy.zeros((2, 2, 2)))
    constant = Jet.constant([1, 1], 2, order=1)
    assert (jet + constant).order == 1
    assert_allclose((jet - jet).value, 0)
    assert_allclose((2 * jet).d1, 2)
    assert_allclose(jet[1].value, 2j)
    assert_allclose(jet.derivative().value, jet.d1)
    rebuilt = Jet.from_slices(jet.slices(), jet.dim, jet.order)
    assert_allclose(rebuilt.d2, jet.d2)
    with pytest.raises(ValueError):
        Jet(1, d2=numpy.zeros((1, 1)))
    with pytest.raises(ValueError):
        Jet(1).derivative()


def test_jet_conjugation_swaps_directions():
    d1 = numpy.array([1, 2j, 3, 4])
    conj = Jet(1j, d1).conj()
    assert conj.value == -1j
    assert_allclose(conj.d1, [3, 4, 1, -2j])
