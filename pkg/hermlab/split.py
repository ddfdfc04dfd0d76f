"""
Splitting of the (1,0) tangent space driven by the Chern torsion.

`W` is spanned by the image of the torsion, `N` is its orthogonal
complement and `N0` the part of `N` on which the torsion vanishes
identically. On CAS models the torsion forms
`tau_i(X, Y) = <T(X, Y), conj(Z_i)>` of a frame `Z_i` of `W` restrict to
`N`; a maximal-rank one splits `N = N1 + N2` with `tau` nondegenerate on
`N1`, and the eigenspaces of `A conj(A)` (`A` the matrix of `tau` on
`N1`) decompose `N1` into holonomy-invariant blocks.

Bases are stored as orthonormal columns of (1,0) coordinates.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy
import scipy.linalg

from .exceptions import Degenerate, NotCAS
from .liegeom.curvature import covariant_derivative
from .liegeom.geometry import ModelGeometry
from .liegeom.models import HermitianModel
from .numlin import (ToleranceContext, approx_zero, contract, lie_closure,
                     max_norm)
from .report import ConditionReport

logger = logging.getLogger(__name__)

RANK_THRESHOLD = 1e-8
RANDOM_COMBINATIONS = 256
EIGENVALUE_GAP = 1e-6
INVARIANCE_STEPS = (1e-2, 1e-3)


@dataclass
class SymplecticBlock:
    """Eigenspace of `A conj(A)` for the eigenvalue `-b**2`, of complex
    dimension `2 * multiplicity`."""

    basis: numpy.ndarray
    b: float
    multiplicity: int

    def to_dict(self) -> dict:
        return {'dimension': int(self.basis.shape[1]), 'b': float(self.b),
                'multiplicity': int(self.multiplicity)}


@dataclass
class DecompositionReport:
    """Subspaces, torsion forms and symplectic blocks of a model.

    Filled in steps by :func:`torsion_split`, :func:`tau_forms` and
    :func:`symplectic_blocks`; `checks` collects the residuals of every
    step.
    """

    W_basis: numpy.ndarray
    N_basis: numpy.ndarray
    N0_basis: numpy.ndarray
    holonomy: List[numpy.ndarray]
    checks: ConditionReport
    cas: bool = False
    tau_forms: List[numpy.ndarray] = field(default_factory=list)
    tau_residuals: List[float] = field(default_factory=list)
    chosen_tau: Optional[numpy.ndarray] = None
    A_matrix: Optional[numpy.ndarray] = None
    N1_basis: Optional[numpy.ndarray] = None
    N2_basis: Optional[numpy.ndarray] = None
    blocks: List[SymplecticBlock] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.W_basis.shape[0]

    @property
    def ell1(self) -> int:
        return self.W_basis.shape[1]

    @property
    def ell2(self) -> int:
        return 0 if self.N2_basis is None else self.N2_basis.shape[1]

    @property
    def ell3(self) -> int:
        return len(self.blocks)

    def to_dict(self) -> dict:
        return {'n': self.n, 'W': self.ell1,
                'N': int(self.N_basis.shape[1]),
                'N0': int(self.N0_basis.shape[1]),
                'N1': (None if self.N1_basis is None
                       else int(self.N1_basis.shape[1])),
                'N2': None if self.N2_basis is None else self.ell2,
                'cas': self.cas,
                'tau_residuals': [float(r) for r in self.tau_residuals],
                'blocks': [block.to_dict() for block in self.blocks],
                'checks': self.checks.to_dict()}


def _complement(basis: numpy.ndarray, n: int) -> numpy.ndarray:
    if basis.shape[1] == 0:
        return numpy.eye(n, dtype=complex)
    return scipy.linalg.null_space(basis.conj().T, rcond=RANK_THRESHOLD)


def _orth(matrix: numpy.ndarray, n: int) -> numpy.ndarray:
    if matrix.size == 0 or max_norm(matrix) <= RANK_THRESHOLD:
        return numpy.zeros((n, 0), dtype=complex)
    return scipy.linalg.orth(matrix, rcond=RANK_THRESHOLD)


def chern_holonomy(geometry: ModelGeometry) -> List[numpy.ndarray]:
    """Lie algebra generated by the Chern curvature operators acting on
    (1,0) vectors (matrices on column coordinates)."""
    operators = geometry.curvature('chern').operator()
    matrices = numpy.swapaxes(operators, -1, -2)
    N = matrices.shape[0]
    return lie_closure([matrices[a, b] for a in range(N)
                        for b in range(a + 1, N)])


def is_cas(geometry: ModelGeometry) -> bool:
    """Whether the Chern torsion and curvature are Chern parallel."""
    scale = max(1.0, geometry.derived.torsion_norm_sq)
    return (approx_zero(geometry.nabla_torsion(0.0), geometry.ctx, scale)
            and approx_zero(geometry.nabla_curvature(0.0), geometry.ctx,
                            scale))


def _invariance_defect(generators: List[numpy.ndarray],
                       basis: numpy.ndarray) -> float:
    """Largest `|(1 - P) g P|` over generators `g`, `P` the projector
    onto the span of `basis`."""
    if not generators or basis.shape[1] == 0:
        return 0.0
    projector = basis @ basis.conj().T
    rest = numpy.eye(len(basis)) - projector
    return max(max_norm(rest @ g @ projector) for g in generators)


def torsion_split(model: HermitianModel,
                  ctx: ToleranceContext = None) -> DecompositionReport:
    """Compute `W`, `N` and `N0`.

    The report also carries the holonomy-invariance of `W` and `N` and
    the vanishing of the curvature on `W`, all conditional on the model
    being CAS.
    """
    geometry = (model if isinstance(model, ModelGeometry)
                else ModelGeometry(model, ctx))
    n = geometry.n
    components = geometry.torsion.components
    image = contract('ikj->jik', components).reshape(n, n * n)
    W = _orth(image, n)
    N = _complement(W, n)
    kernel = contract('ikj->kji', components).reshape(n * n, n)
    if N.shape[1]:
        inside = scipy.linalg.null_space(kernel @ N, rcond=RANK_THRESHOLD)
        N0 = _orth(N @ inside, n)
    else:
        N0 = numpy.zeros((n, 0), dtype=complex)

    holonomy = chern_holonomy(geometry)
    cas = is_cas(geometry)
    checks = ConditionReport(geometry.model.label, geometry.ctx)
    checks.add('splitting', numpy.hstack([W, N]).conj().T
               @ numpy.hstack([W, N]) - numpy.eye(n))
    checks.add('w_invariant', _invariance_defect(holonomy, W),
               hypothesis=cas)
    checks.add('n_invariant', _invariance_defect(holonomy, N),
               hypothesis=cas)
    checks.add('w_curvature',
               numpy.array([g @ W for g in holonomy]) if holonomy else 0.0,
               hypothesis=cas)
    logger.info('Torsion split of %r: dim W = %d, dim N = %d, dim N0 = %d',
                geometry.model.label, W.shape[1], N.shape[1], N0.shape[1])
    return DecompositionReport(W, N, N0, holonomy, checks, cas)


def tau_forms(model: HermitianModel, report: DecompositionReport,
              ctx: ToleranceContext = None) -> List[numpy.ndarray]:
    """Torsion forms `tau_i[a, b] = <T(e_a, e_b), conj(Z_i)>` of the
    orthonormal frame `Z_i` of `W`, stored in `report` with their Chern
    parallelism residuals.

    Raises
    ------
    NotCAS
        If the model is not CAS, so that `W` has no parallel frame.
    """
    geometry = (model if isinstance(model, ModelGeometry)
                else ModelGeometry(model, ctx))
    if report.ell1 == 0:
        logger.info('Model %r has W = 0, no torsion forms',
                    geometry.model.label)
        report.tau_forms, report.tau_residuals = [], []
        return []
    if not report.cas:
        raise NotCAS(f'Model {geometry.model.label!r} is not CAS')

    n = geometry.n
    torsion = geometry.torsion.full
    forms, residuals = [], []
    for Z in report.W_basis.T:
        form = torsion.map(
            lambda p, Z=Z: contract('abj,j->ab', p[:, :, :n], Z.conj()))
        nabla = covariant_derivative(geometry.model, geometry.chern,
                                     form).value
        forms.append(form.value[:n, :n])
        residuals.append(max_norm(nabla))
    report.tau_forms, report.tau_residuals = forms, residuals
    report.checks.add('tau_parallel', numpy.array(residuals))
    report.checks.add('tau_skew', numpy.array([t + t.T for t in forms]))
    return forms


def _numerical_rank(matrix: numpy.ndarray):
    singular = numpy.linalg.svd(matrix, compute_uv=False)
    nonzero = singular[singular > RANK_THRESHOLD]
    return len(nonzero), (nonzero.min() if nonzero.size else 0.0)


def select_tau(forms: List[numpy.ndarray], N: numpy.ndarray,
               seed: int = 0) -> numpy.ndarray:
    """Combination of the torsion forms of maximal rank on `N`, ties
    broken by the largest smallest nonzero singular value."""
    rng = numpy.random.default_rng(seed)
    candidates = list(forms)
    for _ in range(RANDOM_COMBINATIONS if len(forms) > 1 else 0):
        weights = rng.standard_normal(len(forms)) \
            + 1j * rng.standard_normal(len(forms))
        weights /= numpy.linalg.norm(weights)
        candidates.append(sum(w * f for w, f in zip(weights, forms)))
    return max(candidates,
               key=lambda tau: _numerical_rank(N.T @ tau @ N))


def pairing_blocks(A: numpy.ndarray,
                   gap: float = EIGENVALUE_GAP) -> List[SymplecticBlock]:
    """Eigenspaces of `A conj(A) = -A A*` for a nondegenerate
    antisymmetric `A`, grouped by distinct eigenvalues `-b**2` with
    `b` decreasing.

    Raises
    ------
    Degenerate
        If an eigenspace has odd dimension or `A` is singular.
    """
    values, vectors = scipy.linalg.eigh(A @ A.conj().T)
    order = numpy.argsort(values)[::-1]
    values, vectors = values[order], vectors[:, order]
    if values.size and values[-1] <= RANK_THRESHOLD:
        raise Degenerate('Pairing matrix is singular')
    blocks, start = [], 0
    for stop in range(1, len(values) + 1):
        if (stop == len(values)
                or values[stop - 1] - values[stop] > gap * values[0]):
            size = stop - start
            if size % 2:
                raise Degenerate(f'Eigenspace of A conj(A) with odd'
                                 f' dimension {size}')
            b = float(numpy.sqrt(values[start:stop].mean()))
            blocks.append(SymplecticBlock(vectors[:, start:stop], b,
                                          size // 2))
            start = stop
    return blocks


def symplectic_blocks(report: DecompositionReport,
                      chosen_tau: Union[int, numpy.ndarray] = None,
                      seed: int = 0) -> List[SymplecticBlock]:
    """Split `N` by a torsion form and decompose `N1` into blocks.

    Parameters
    ----------
    report : DecompositionReport
        Result of :func:`torsion_split` and :func:`tau_forms`.
    chosen_tau : Union[int, numpy.ndarray], optional
        Index into `report.tau_forms` or an explicit antisymmetric
        matrix; by default the combination of maximal rank on `N`.
    seed : int, optional
        Seed of the random combinations.

    Raises
    ------
    Degenerate
        If the chosen form vanishes on `N`.
    """
    N = report.N_basis
    if isinstance(chosen_tau, (int, numpy.integer)):
        tau = report.tau_forms[chosen_tau]
    elif chosen_tau is not None:
        tau = numpy.asarray(chosen_tau, dtype=complex)
    elif report.tau_forms:
        tau = select_tau(report.tau_forms, N, seed)
    else:
        raise Degenerate('No torsion form to pair N with')
    restricted = N.T @ tau @ N
    if N.shape[1] == 0 or max_norm(restricted) <= RANK_THRESHOLD:
        raise Degenerate('Torsion form vanishes on N')

    kernel = scipy.linalg.null_space(restricted, rcond=RANK_THRESHOLD)
    N2 = _orth(N @ kernel, report.n)
    inside = _complement(kernel, N.shape[1])
    N1 = N @ inside
    A = inside.T @ restricted @ inside
    blocks = [SymplecticBlock(N1 @ block.basis, block.b, block.multiplicity)
              for block in pairing_blocks(A)]

    report.chosen_tau, report.A_matrix = tau, A
    report.N1_basis, report.N2_basis, report.blocks = N1, N2, blocks
    holonomy = report.holonomy
    hypothesis = report.cas
    report.checks.add('block_invariance',
                      numpy.array([_invariance_defect(holonomy, block.basis)
                                   for block in blocks]),
                      hypothesis=hypothesis)
    report.checks.add('n2_curvature',
                      numpy.array([g @ N2 for g in holonomy])
                      if holonomy and N2.shape[1] else 0.0,
                      hypothesis=hypothesis)
    report.checks.add('tau_invariance', _tau_invariance(tau, holonomy, N1),
                      hypothesis=hypothesis)
    report.checks.add('dimension_count',
                      2 * sum(b.multiplicity for b in blocks)
                      + report.ell1 + report.ell2 - report.n)
    logger.info('Symplectic blocks: b = %s',
                [round(block.b, 9) for block in blocks])
    return blocks


def _tau_invariance(tau: numpy.ndarray, holonomy: List[numpy.ndarray],
                    basis: numpy.ndarray) -> numpy.ndarray:
    """`h^t A h - A` for `h = exp(eps g)` restricted to `basis`, scaled by
    `eps**-2`, together with the infinitesimal defect `g^t A + A g`."""
    A = basis.T @ tau @ basis
    defects = [0.0]
    for g in holonomy:
        restricted = basis.conj().T @ g @ basis
        defects.append(max_norm(restricted.T @ A + A @ restricted))
        for step in INVARIANCE_STEPS:
            h = scipy.linalg.expm(step * restricted)
            defects.append(max_norm(h.T @ A @ h - A) / step ** 2)
    return numpy.array(defects)


def trace_free_check(model: HermitianModel,
                     blocks: List[SymplecticBlock],
                     ctx: ToleranceContext = None) -> ConditionReport:
    """Trace of the Chern curvature restricted to each block and the
    Ricci form of the restriction,
    `Ric(v, conj(v)) = sum_l R(v, conj(v), E_l, conj(E_l))`."""
    geometry = (model if isinstance(model, ModelGeometry)
                else ModelGeometry(model, ctx))
    curv = geometry.curvature('chern')
    operators = numpy.swapaxes(curv.operator(), -1, -2)
    hermitian = curv.hermitian()
    cas = is_cas(geometry)
    report = ConditionReport(geometry.model.label, geometry.ctx)
    for k, block in enumerate(blocks):
        E = block.basis
        traces = contract('ip,xyij,jp->xy', E.conj(), operators, E)
        ricci = contract('ip,jq,kl,ml,ijkm->pq', E, E.conj(), E, E.conj(),
                         hermitian)
        report.add(f'trace_free[{k}]', traces, hypothesis=cas)
        report.add(f'ricci_free[{k}]', ricci, hypothesis=cas)
    return report


def decompose(model: HermitianModel, ctx: ToleranceContext = None,
              seed: int = 0) -> DecompositionReport:
    """Run the whole splitting, stopping quietly where a step does not
    apply (no torsion forms, non-CAS model, degenerate pairing)."""
    geometry = (model if isinstance(model, ModelGeometry)
                else ModelGeometry(model, ctx))
    report = torsion_split(geometry)
    try:
        if tau_forms(geometry, report):
            symplectic_blocks(report, seed=seed)
            report.checks.extend(trace_free_check(geometry, report.blocks))
    except (NotCAS, Degenerate) as e:
        logger.info('Splitting of %r stopped: %s', geometry.model.label, e)
    return report
