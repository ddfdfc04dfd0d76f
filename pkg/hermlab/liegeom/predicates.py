"""
Condition predicates of a Hermitian model.

Every predicate is reported as a residual tensor whose max-norm is
compared with `abs_tol` (see :class:`~hermlab.report.ConditionReport`).
"""

import logging
from typing import Iterable, Tuple

import numpy
import scipy.linalg

from ..numlin import (Jet, ToleranceContext, conjugate_index, contract,
                      max_norm, wedge)
from ..report import ConditionReport
from .curvature import covariant_derivative, riemannian_ricci
from .forms import exterior_derivative, kahler_form, project_type
from .geometry import ModelGeometry
from .models import HermitianModel

logger = logging.getLogger(__name__)

DEFAULT_T_VALUES = (-1.0, 0.0, 0.5, 1.0, 2.0, 3.0)


def _geometry(model, ctx) -> ModelGeometry:
    if isinstance(model, ModelGeometry):
        return model
    return ModelGeometry(model, ctx)


def kahler_like_residual(geometry: ModelGeometry, tag,
                         t: float = None) -> numpy.ndarray:
    """`R(x, y, z, conj w)` on (1,0) vectors stacked with the defect of
    `R_{x ybar z wbar} = R_{z ybar x wbar}`."""
    curv = geometry.curvature(tag, t)
    n = geometry.n
    pure = curv.value[:n, :n, :n, n:]
    hermitian = curv.hermitian()
    symmetry = hermitian - contract('kjil->ijkl', hermitian)
    return numpy.concatenate([pure.ravel(), symmetry.ravel()])


def pluriclosed_residual(geometry: ModelGeometry) -> numpy.ndarray:
    """`d((d omega)^(1,2))`, which is `d dbar omega`."""
    model = geometry.model
    omega = Jet.constant(kahler_form(model.n), model.dim, order=2)
    d_omega = exterior_derivative(model.structure_jet(2), omega)
    dbar_omega = d_omega.map(lambda p: project_type(p, 1, 2))
    return exterior_derivative(model.structure_jet(1), dbar_omega).value


def lee_form(geometry: ModelGeometry) -> Tuple[Jet, float]:
    """Least-squares solution `psi` of `d omega = psi ^ omega` (with one
    derivative level) and the residual of the equation."""
    model = geometry.model
    N = model.dim
    omega = kahler_form(model.n)
    d_omega = exterior_derivative(
        model.structure_jet(2), Jet.constant(omega, N, order=2))
    system = numpy.array([wedge(numpy.eye(N)[a], omega).ravel()
                          for a in range(N)]).T
    rhs = numpy.array([s.ravel() for s in d_omega.slices()]).T
    solution, *_ = scipy.linalg.lstsq(system, rhs)
    residual = max_norm(system @ solution[:, 0] - rhs[:, 0])
    psi = Jet.from_slices(list(solution.T), d_omega.dim, d_omega.order)
    return psi, residual


def torsion_three_form(geometry: ModelGeometry) -> Jet:
    """`H(x, y, z) = g(T^b(x, y), z)` of the Bismut torsion."""
    return geometry.lowered(geometry.bismut_torsion.full)


def predicates(model: HermitianModel, ctx: ToleranceContext = None,
               t_values: Iterable[float] = DEFAULT_T_VALUES,
               ) -> ConditionReport:
    """Evaluate every condition predicate on a model.

    Parameters
    ----------
    model : HermitianModel
        Model (or an existing :class:`ModelGeometry`).
    ctx : ToleranceContext, optional
        Tolerances.
    t_values : Iterable[float], optional
        Gauduchon parameters for the `is_AS(t)` sweep.

    Returns
    -------
    ConditionReport
        Entries `kahler`, `balanced`, `pluriclosed`, `kahler_like(chern)`,
        `kahler_like(bismut)`, `btp`, `AS(t=...)`, `btp_symmetry`,
        `vaisman`, `brf_pair`, `unimodular`, `chern_flat`, `bismut_flat`,
        `bkl`, `cyt`.
    """
    geometry = _geometry(model, ctx)
    model = geometry.model
    report = ConditionReport(model.label, geometry.ctx)
    bar = conjugate_index(model.dim)

    report.add('kahler', geometry.torsion.components)
    report.add('balanced', geometry.derived.eta)
    report.add('pluriclosed', pluriclosed_residual(geometry))
    report.add('kahler_like(chern)', kahler_like_residual(geometry, 'chern'))
    report.add('kahler_like(bismut)',
               kahler_like_residual(geometry, 'bismut'))
    btp = report.add('btp', geometry.nabla_torsion(2.0))

    for t in t_values:
        nabla_t = geometry.nabla_torsion(t)
        nabla_r = geometry.nabla_curvature(t)
        report.add(f'AS(t={t:g})',
                   numpy.concatenate([nabla_t.ravel(), nabla_r.ravel()]),
                   torsion_residual=max_norm(nabla_t),
                   curvature_residual=max_norm(nabla_r))

    bismut_hermitian = geometry.curvature('bismut').hermitian()
    report.add('btp_symmetry', bismut_hermitian
               - contract('klij->ijkl', bismut_hermitian))

    psi, lee_residual = lee_form(geometry)
    if lee_residual <= geometry.ctx.abs_tol:
        nabla_psi = covariant_derivative(model, geometry.levi_civita, psi)
        report.add('vaisman', nabla_psi.value, lee_form=psi.value)
    else:
        report.add('vaisman', lee_residual, status='VaismanUndefined')

    three_form = torsion_three_form(geometry)
    H = three_form.value
    closed = exterior_derivative(model.structure_jet(1), three_form).value
    square = contract('xab,yab->xy', H, H[:, bar][:, :, bar])
    ricci_defect = (riemannian_ricci(geometry.curvature('levi_civita'))
                    - square / 4)
    nabla_h = covariant_derivative(model, geometry.levi_civita,
                                   three_form).value
    coclosed = contract('aayz->yz', nabla_h[:, bar])
    report.add('brf_pair',
               numpy.concatenate([closed.ravel(), ricci_defect.ravel()]),
               skew_defect=max_norm(H + numpy.transpose(H, (0, 2, 1))),
               closed=max_norm(closed), ricci=max_norm(ricci_defect),
               coclosed=max_norm(coclosed))

    report.add('unimodular', contract('abb->a', model.bracket))
    report.add('chern_flat', geometry.curvature('chern').value)
    report.add('bismut_flat', geometry.curvature('bismut').value)
    pluriclosed = report.holds('pluriclosed')
    bkl = report.add('bkl', report['kahler_like(bismut)'].residual,
                     btp=btp.holds, pluriclosed=pluriclosed)
    characterized = btp.holds and pluriclosed
    bkl.detail['characterization_agrees'] = bkl.holds == characterized
    if bkl.holds != characterized:
        logger.warning('Bismut Kähler-like verdict of %r (%s) disagrees '
                       'with BTP and pluriclosed (%s)', model.label,
                       bkl.holds, characterized)
    report.add('cyt', geometry.ricci('bismut').ric1)
    logger.info('Predicates of %r: %d/%d hold', model.label,
                sum(e.holds for e in report), len(report))
    return report
