"""
Curvature and torsion identities relating the Chern, Bismut and
t-Gauduchon connections.

The two Gauduchon identities hold on every Hermitian model. The others
are consequences of extra hypotheses (Bismut torsion-parallel, vanishing
Ricci curvatures, t-Ambrose-Singer); each of them is reported with the
status of its hypothesis and holds vacuously when the hypothesis fails.

Torsion products below use the components `T^j_{ik}` indexed `[i, k, j]`
and are all indexed `[i, j, k, l]` like `R_{i jbar k lbar}`.
"""

import logging
from typing import Dict

import numpy

from ..numlin import ToleranceContext, approx_zero, contract
from ..report import ConditionReport
from .geometry import ModelGeometry
from .models import HermitianModel
from .torsion import transform_torsion

logger = logging.getLogger(__name__)

_PRODUCTS = {
    'P1': 'irj,lrk->ijkl',  # T^j_{ir} conj(T^k_{lr})
    'P2': 'krl,jri->ijkl',  # T^l_{kr} conj(T^i_{jr})
    'P3': 'ikr,jlr->ijkl',  # T^r_{ik} conj(T^r_{jl})
    'P4': 'irl,jrk->ijkl',  # T^l_{ir} conj(T^k_{jr})
    'P5': 'krj,lri->ijkl',  # T^j_{kr} conj(T^i_{lr})
}


def torsion_products(components: numpy.ndarray) -> Dict[str, numpy.ndarray]:
    """Quadratic torsion terms appearing in the curvature identities."""
    conjugate = components.conj()
    return {name: contract(subscripts, components, conjugate)
            for name, subscripts in _PRODUCTS.items()}


def _swap_first_third(tensor: numpy.ndarray) -> numpy.ndarray:
    """`X_{i jbar k lbar} -> X_{k jbar i lbar}`."""
    return contract('kjil->ijkl', tensor)


def torsion_derivative(geometry: ModelGeometry, t: float) -> numpy.ndarray:
    """`T^l_{ik, jbar}` (derivative along `conj(e_j)` with respect to
    `nabla^(t)`), indexed `[i, j, k, l]`."""
    n = geometry.n
    nabla = geometry.nabla_torsion(t)
    return contract('jikl->ijkl', nabla[n:, :n, :n, :n])


def b_diagonal_frame(B: numpy.ndarray):
    """Eigenvalues of `B` and the unitary matrix `U` with `U B U*`
    diagonal."""
    values, vectors = numpy.linalg.eigh(B)
    return values, vectors.conj().T


def gauduchon_identities(geometry: ModelGeometry,
                         t: float) -> Dict[str, numpy.ndarray]:
    """Residual tensors of the two identities linking `nabla^(t) T`, the
    Chern curvature and the t-Gauduchon curvature."""
    s = float(t) / 2
    P = torsion_products(geometry.torsion.components)
    X = torsion_derivative(geometry, t)
    chern = geometry.curvature('chern').hermitian()
    gauduchon = geometry.curvature('gauduchon', t).hermitian()
    first = (X + chern - _swap_first_third(chern)
             + s * (P['P4'] - P['P2'] - P['P3']))
    second = (gauduchon - chern
              - s * (X + contract('jilk->ijkl', X).conj())
              + s ** 2 * (P['P1'] + P['P2'] + P['P3'] - P['P4']))
    return {'torsion_derivative': first, 'gauduchon_curvature': second}


def check_curvature_identities(model: HermitianModel, t: float = 1.0,
                               ctx: ToleranceContext = None
                               ) -> ConditionReport:
    """Check the curvature identities of a model at one Gauduchon
    parameter.

    Parameters
    ----------
    model : HermitianModel
        Model (or an existing :class:`ModelGeometry`).
    t : float, optional
        Gauduchon parameter of the unconditional identities and of the
        t-Ambrose-Singer consequences.
    ctx : ToleranceContext, optional
        Tolerances, both for the residuals and for deciding hypotheses.

    Returns
    -------
    ConditionReport
        One entry per identity. Conditional entries carry their
        hypothesis status in `hypothesis` and list the individual
        hypotheses in `detail`.
    """
    if isinstance(model, ModelGeometry):
        geometry = model
    else:
        geometry = ModelGeometry(model, ctx)
    ctx = geometry.ctx
    t = float(t)
    report = ConditionReport(geometry.model.label, ctx)

    for name, residual in gauduchon_identities(geometry, t).items():
        report.add(name, residual, t=t)

    components = geometry.torsion.components
    derived = geometry.derived
    P = torsion_products(components)
    chern = geometry.curvature('chern').hermitian()
    bismut = geometry.curvature('bismut').hermitian()
    chern_ricci = geometry.ricci('chern')
    bismut_ricci = geometry.ricci('bismut')
    scale = max(1.0, derived.torsion_norm_sq)

    btp = approx_zero(geometry.nabla_torsion(2.0), ctx, scale)
    ric1_b = approx_zero(bismut_ricci.ric1, ctx, scale)
    ric3_b = approx_zero(bismut_ricci.ric3, ctx, scale)
    balanced = approx_zero(derived.eta, ctx, scale)

    report.add('bismut_chern_difference',
               bismut - chern + P['P3'] + P['P1'] + P['P2'] - P['P4'],
               hypothesis=btp, btp=btp)
    report.add('chern_bismut_swap',
               chern - _swap_first_third(bismut) - P['P5'],
               hypothesis=btp, btp=btp)
    report.add('bismut_swap',
               bismut - _swap_first_third(bismut)
               + P['P3'] + P['P1'] + P['P2'] - P['P4'] - P['P5'],
               hypothesis=btp, btp=btp)
    report.add('ricci_b_tensor',
               chern_ricci.ric1 - bismut_ricci.ric3 - derived.B,
               hypothesis=btp, btp=btp)

    B = derived.B
    b_closed = (contract('rkj,ir->ikj', components, B)
                + contract('irj,kr->ikj', components, B)
                - contract('ikr,rj->ikj', components, B))
    values, to_diagonal = b_diagonal_frame(B)
    diagonal = transform_torsion(components, to_diagonal)
    weights = (values[:, None, None] + values[None, :, None]
               - values[None, None, :])
    hypothesis = btp and ric3_b
    report.add('b_closed', b_closed, hypothesis=hypothesis,
               btp=btp, ric3_bismut=ric3_b)
    report.add('b_diagonal', weights * diagonal, hypothesis=hypothesis,
               btp=btp, ric3_bismut=ric3_b, b=values)
    report.add('not_fano', values.min() if values.size else 0.0,
               hypothesis=hypothesis, btp=btp, ric3_bismut=ric3_b)
    report.add('b_phi', B - derived.phi - derived.phi.conj().T,
               hypothesis=btp and ric1_b and ric3_b,
               btp=btp, ric1_bismut=ric1_b, ric3_bismut=ric3_b)

    _gauduchon_consequences(report, geometry, t, scale, balanced, values,
                            diagonal)
    logger.info('Identities of %r at t=%g: %d/%d hold (%d vacuous)',
                geometry.model.label, t, sum(e.holds for e in report),
                len(report), sum(e.vacuous for e in report))
    return report


def _gauduchon_consequences(report: ConditionReport,
                            geometry: ModelGeometry, t: float, scale: float,
                            balanced: bool, values: numpy.ndarray,
                            diagonal: numpy.ndarray):
    ctx = geometry.ctx
    derived = geometry.derived
    chern_ricci = geometry.ricci('chern')
    t_ricci = geometry.ricci('gauduchon', t)
    t_gas = (approx_zero(geometry.nabla_torsion(t), ctx, scale)
             and approx_zero(geometry.nabla_curvature(t), ctx, scale))
    ric1_t = approx_zero(t_ricci.ric1, ctx, scale)
    ric3_t = approx_zero(t_ricci.ric3, ctx, scale)
    quarter = t ** 2 / 4

    hypothesis = t_gas and t != 2 and balanced
    status = dict(t=t, t_gas=t_gas, balanced=balanced)
    report.add('gauduchon_scalar',
               numpy.array([t_ricci.s1 - chern_ricci.s1,
                            chern_ricci.s1 - chern_ricci.s3,
                            t_ricci.s3 - chern_ricci.s3
                            + quarter * derived.torsion_norm_sq]),
               hypothesis=hypothesis, **status)
    report.add('gauduchon_ricci',
               numpy.stack([t_ricci.ric1 - chern_ricci.ric1,
                            chern_ricci.ric1 - chern_ricci.ric3,
                            t_ricci.ric3 - chern_ricci.ric3
                            + quarter * derived.B]),
               hypothesis=hypothesis, **status)

    hypothesis = t_gas and t not in (0, 2) and balanced and ric3_t
    status['ric3_gauduchon'] = ric3_t
    report.add('gauduchon_ricci_b', chern_ricci.ric1 - quarter * derived.B,
               hypothesis=hypothesis, **status)
    weights = (t * values[:, None, None] + t * values[None, :, None]
               - 2 * (t - 1) * values[None, None, :])
    report.add('gauduchon_b_relation', weights * diagonal,
               hypothesis=hypothesis, **status)
    report.add('gauduchon_negative_kahler', geometry.torsion.components,
               hypothesis=hypothesis and t < 0, **status)
    report.add('gauduchon_ricci_flat_kahler', geometry.torsion.components,
               hypothesis=hypothesis and ric1_t,
               ric1_gauduchon=ric1_t, **status)
