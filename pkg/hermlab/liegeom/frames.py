"""
Admissible unitary frames of non-balanced models.

A frame is admissible when the torsion 1-form is `eta = lambda phi_n`
with `lambda = |eta| > 0` and the block `T^j_{in}` (`i, j < n`) is
diagonal, `T^j_{in} = delta_ij a_i`.
"""

import logging
from dataclasses import dataclass

import numpy
import scipy.linalg

from ..exceptions import Balanced, NotDiagonalizable
from ..numlin import FrameChange, ToleranceContext, approx_zero
from ..report import ConditionReport
from .geometry import ModelGeometry
from .models import HermitianModel
from .torsion import torsion_derived, transform_torsion

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AdmissibleFrame:
    """Result of :func:`admissible_frame`.

    Attributes
    ----------
    frame : FrameChange
        Unitary change from the model frame to the admissible one.
    eta_norm : float
        `lambda = |eta|`.
    a : numpy.ndarray
        `a_i = T^i_{in}` for `i < n`, followed by `a_n = 0`.
    b : numpy.ndarray
        Diagonal of `B` in the admissible frame, `i < n`.
    delta : numpy.ndarray
        `delta_i = sum_{j<k<n} |T^i_{jk}|^2`, `i < n`.
    torsion : numpy.ndarray
        Torsion components `[i, k, j]` in the admissible frame.
    report : ConditionReport
        Residuals of the admissibility conditions and of the relations
        between `lambda`, `a`, `b` and `delta`.
    """

    frame: FrameChange
    eta_norm: float
    a: numpy.ndarray
    b: numpy.ndarray
    delta: numpy.ndarray
    torsion: numpy.ndarray
    report: ConditionReport


def _eta_frame(eta: numpy.ndarray, eta_norm: float) -> numpy.ndarray:
    n = len(eta)
    matrix = numpy.zeros((n, n), dtype=complex)
    if n > 1:
        matrix[:n - 1] = scipy.linalg.null_space(eta[None, :]).T
    matrix[n - 1] = eta.conj() / eta_norm
    return matrix


def admissible_frame(model: HermitianModel,
                     ctx: ToleranceContext = None) -> AdmissibleFrame:
    """Build an admissible frame of a non-balanced model.

    The last frame vector is the dual of `eta`; the remaining ones are
    rotated by the Schur decomposition of `M_ij = T^j_{in}`.

    Parameters
    ----------
    model : HermitianModel
        Model (or an existing :class:`ModelGeometry`).
    ctx : ToleranceContext, optional
        Tolerances.

    Returns
    -------
    AdmissibleFrame

    Raises
    ------
    Balanced
        If `eta` vanishes.
    NotDiagonalizable
        If `M` is not normal, so that its Schur form keeps off-diagonal
        entries.
    """
    geometry = (model if isinstance(model, ModelGeometry)
                else ModelGeometry(model, ctx))
    ctx = geometry.ctx
    n = geometry.n
    derived = geometry.derived
    eta_norm = derived.eta_norm
    if approx_zero(eta_norm, ctx):
        raise Balanced(f'Model {geometry.model.label!r} is balanced;'
                       ' there is no admissible frame')

    first = _eta_frame(derived.eta, eta_norm)
    components = transform_torsion(geometry.torsion.components, first)
    block = components[:n - 1, n - 1, :n - 1]
    schur, vectors = scipy.linalg.schur(block, output='complex')
    rotation = scipy.linalg.block_diag(vectors.conj().T, numpy.eye(1))
    off_diagonal = schur - numpy.diag(numpy.diag(schur))
    scale = max(1.0, derived.torsion_norm_sq)
    if not approx_zero(off_diagonal, ctx, scale):
        raise NotDiagonalizable(
            'The torsion block T^j_{in} is not normal (off-diagonal'
            f' residual {numpy.abs(off_diagonal).max():.3e})')

    matrix = rotation @ first
    frame = FrameChange(matrix)
    torsion = transform_torsion(geometry.torsion.components, matrix)
    admissible = torsion_derived(torsion)
    a = numpy.append(numpy.diag(schur), 0.0)
    b = numpy.diag(admissible.B).real[:n - 1]
    delta = numpy.array([
        sum(abs(torsion[j, k, i]) ** 2
            for j in range(n - 1) for k in range(j + 1, n - 1))
        for i in range(n - 1)])

    bismut_ricci = geometry.ricci('bismut')
    ricci_flat = (approx_zero(bismut_ricci.ric1, ctx, scale)
                  and approx_zero(bismut_ricci.ric3, ctx, scale))
    report = ConditionReport(geometry.model.label, ctx)
    report.add('eta_admissible',
               admissible.eta - numpy.eye(n)[n - 1] * eta_norm)
    report.add('torsion_block_diagonal',
               torsion[:n - 1, n - 1, :n - 1]
               - numpy.diag(a[:n - 1]))
    report.add('eta_sum', a.sum() - eta_norm)
    report.add('b_torsion_norm',
               b - 2 * numpy.abs(a[:n - 1]) ** 2 - 2 * delta)
    report.add('b_eta', b - eta_norm * 2 * a[:n - 1].real,
               hypothesis=ricci_flat, bismut_ricci_flat=ricci_flat)
    logger.info('Admissible frame of %r: lambda=%.6g', geometry.model.label,
                eta_norm)
    return AdmissibleFrame(frame, eta_norm, a, b, delta, torsion, report)
