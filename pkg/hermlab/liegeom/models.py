"""
Hermitian models: a unitary (1,0)-frame together with its brackets.

Index conventions
-----------------
The complexified frame is `x_0 .. x_{2n-1}` with `x_a = e_a` for
`a < n` and `x_{n+a} = conj(e_a)`. Every model exposes its full bracket
as structure constants `c[a, b, d]` with `[x_a, x_b] = sum_d c[a, b, d] x_d`.
The metric pairs `x_a` with its conjugate only: `g(x_a, x_b) = 1` when
`b = (a + n) mod 2n` and 0 otherwise.

Left-invariant structure is stored through the constants

- `C[i, j, k] = C^k_{ij}` with `[e_i, e_j] = sum_k C^k_{ij} e_k`;
- `D[k, i, j] = D^j_{ki}` with
  `[e_i, conj(e_j)] = sum_k (conj(D^i_{kj}) e_k - D^j_{ki} conj(e_k))`.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Callable, Dict, Mapping, Optional, Union

import numpy

from ..enums import FrameKind
from ..exceptions import InvalidModel, JacobiViolation
from ..numlin import (DEFAULT_TOLERANCE, FrameChange, Jet, ToleranceContext,
                      approx_zero, conjugate_index, contract, jacobi_tensor,
                      max_norm, unitarize)

logger = logging.getLogger(__name__)


def bracket_from_constants(C: numpy.ndarray,
                           D: numpy.ndarray) -> numpy.ndarray:
    """Full structure constants `c[a, b, d]` from `C` and `D`."""
    n = C.shape[0]
    c = numpy.zeros((2 * n,) * 3, dtype=complex)
    c[:n, :n, :n] = C
    c[n:, n:, n:] = C.conj()
    c[:n, n:, :n] = contract('kji->ijk', D.conj())
    c[:n, n:, n:] = -contract('kij->ijk', D)
    c[n:, :n, :] = -numpy.transpose(c[:n, n:, :], (1, 0, 2))
    return c


def constants_from_bracket(c: numpy.ndarray):
    """Read `C` and `D` back from full structure constants."""
    n = c.shape[0] // 2
    C = c[:n, :n, :n].copy()
    D = -contract('ijk->kij', c[:n, n:, n:])
    return C, D


def reality_defect(c: numpy.ndarray) -> float:
    """How far a full bracket is from being the complexification of a
    real bracket of an integrable structure."""
    n = c.shape[0] // 2
    bar = conjugate_index(2 * n)
    conjugated = c[bar][:, bar][:, :, bar].conj()
    return max(max_norm(c - conjugated),
               max_norm(c[:n, :n, n:]),
               max_norm(c - (-numpy.transpose(c, (1, 0, 2)))))


def jacobi_defect(structure: Jet) -> float:
    """Max-norm of the Jacobiator, frame-derivative terms included."""
    jacobi = jacobi_tensor(structure.value)
    if structure.d1 is not None:
        d1 = structure.d1
        jacobi = (jacobi + d1
                  + contract('bdae->abde', d1) + contract('dabe->abde', d1))
    return max_norm(jacobi)


@dataclass(frozen=True, eq=False)
class LieHermitianModel:
    """Lie algebra with a left-invariant Hermitian structure, given in
    a unitary (1,0)-frame.

    Parameters
    ----------
    n : int
        Complex dimension.
    C : numpy.ndarray
        `C[i, j, k] = C^k_{ij}`, antisymmetric in `i, j`.
    D : numpy.ndarray
        `D[k, i, j] = D^j_{ki}`.
    label : str, optional
        Human readable name.
    """

    n: int
    C: numpy.ndarray
    D: numpy.ndarray
    label: str = ''

    def __post_init__(self):
        for name in ('C', 'D'):
            array = numpy.array(getattr(self, name), dtype=complex)
            if array.shape != (self.n,) * 3:
                raise InvalidModel(f'`{name}` must have shape {(self.n,) * 3},'
                                   f' got {array.shape}')
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def dim(self) -> int:
        """Size of the complexified frame."""
        return 2 * self.n

    @cached_property
    def bracket(self) -> numpy.ndarray:
        """Full structure constants `c[a, b, d]`."""
        bracket = bracket_from_constants(self.C, self.D)
        bracket.setflags(write=False)
        return bracket

    def structure_jet(self, order: int = 2) -> Jet:
        """Structure constants as a jet with zero derivatives."""
        return Jet.constant(self.bracket, self.dim, order)

    def residuals(self) -> Dict[str, float]:
        """Defects of antisymmetry, Jacobi and reality."""
        return {
            'antisymmetry': max_norm(self.C + numpy.transpose(self.C,
                                                              (1, 0, 2))),
            'jacobi': jacobi_defect(Jet(self.bracket)),
            'reality': reality_defect(self.bracket),
        }

    def validate(self, ctx: ToleranceContext = None) -> 'LieHermitianModel':
        """Check bracket axioms.

        Raises
        ------
        JacobiViolation
            Antisymmetry or Jacobi fails beyond `abs_tol`.
        """
        ctx = ctx or DEFAULT_TOLERANCE
        residuals = self.residuals()
        scale = max(1.0, max_norm(self.bracket)) ** 2
        for name in ('antisymmetry', 'jacobi'):
            if not residuals[name] <= ctx.abs_tol * scale:
                raise JacobiViolation(f'Model {self.label!r} fails {name}:'
                                      f' residual {residuals[name]:.3e}')
        if not residuals['reality'] <= ctx.abs_tol * scale:
            logger.warning('Model %r: reconstructed bracket is not real'
                           ' (residual %.3e)', self.label,
                           residuals['reality'])
        return self

    @classmethod
    def from_bracket(cls, bracket: numpy.ndarray,
                     label: str = '') -> 'LieHermitianModel':
        """Model whose full bracket is `bracket`."""
        C, D = constants_from_bracket(numpy.asarray(bracket, dtype=complex))
        return cls(C.shape[0], C, D, label)


@dataclass(frozen=True, eq=False)
class PointwiseFrameModel:
    """Unitary frame of a non-homogeneous Hermitian manifold, evaluated
    at a base point.

    Parameters
    ----------
    n : int
        Complex dimension.
    point : numpy.ndarray
        Base point `z`.
    structure_fn : Callable
        `z -> Jet` of the structure functions `c[a, b, d]` with closed-form
        first and second frame derivatives.
    frame_fn : Callable
        `z -> E` with `e_i = sum_j E[i, j] d/dz_j`, used by
        finite-difference cross-checks.
    label : str, optional
        Human readable name.
    reference : Mapping[str, Callable], optional
        Closed-form evaluators `z -> array` of known quantities.
    source : Mapping[str, Any], optional
        Zoo name and parameters the model was built from.
    """

    n: int
    point: numpy.ndarray
    structure_fn: Callable[[numpy.ndarray], Jet]
    frame_fn: Callable[[numpy.ndarray], numpy.ndarray]
    label: str = ''
    reference: Mapping[str, Callable] = field(default_factory=dict)
    source: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        point = numpy.array(self.point, dtype=complex).reshape(self.n)
        point.setflags(write=False)
        object.__setattr__(self, 'point', point)

    @property
    def dim(self) -> int:
        """Size of the complexified frame."""
        return 2 * self.n

    @cached_property
    def _structure(self) -> Jet:
        return self.structure_fn(self.point)

    @property
    def bracket(self) -> numpy.ndarray:
        """Structure functions at the base point."""
        return self._structure.value

    def structure_jet(self, order: int = 2) -> Jet:
        """Structure functions and their frame derivatives."""
        return self._structure.truncate(order)

    def at(self, point) -> 'PointwiseFrameModel':
        """Same model at another base point."""
        return replace(self, point=point)

    def residuals(self) -> Dict[str, float]:
        """Defects of Jacobi (derivative terms included) and reality."""
        return {'jacobi': jacobi_defect(self.structure_jet(1)),
                'reality': reality_defect(self.bracket)}

    def validate(self, ctx: ToleranceContext = None) -> 'PointwiseFrameModel':
        """Check the Jacobi identity of the frame at the base point."""
        ctx = ctx or DEFAULT_TOLERANCE
        residual = self.residuals()['jacobi']
        if not residual <= ctx.abs_tol:
            raise JacobiViolation(f'Model {self.label!r} fails jacobi:'
                                  f' residual {residual:.3e}')
        return self


HermitianModel = Union[LieHermitianModel, PointwiseFrameModel]


def finite_difference_derivative(model: PointwiseFrameModel,
                                 fn: Callable[[numpy.ndarray], numpy.ndarray],
                                 step: float = 1e-5) -> numpy.ndarray:
    """Frame derivatives `x_s(fn)` at the base point by central
    differences along the real and imaginary coordinate axes.

    Returns an array indexed `[s, ...]` like `Jet.d1`.
    """
    z = model.point
    n = model.n
    partial = []
    for j in range(n):
        shift = numpy.zeros(n, dtype=complex)
        shift[j] = step
        dx = (numpy.asarray(fn(z + shift))
              - numpy.asarray(fn(z - shift))) / (2 * step)
        dy = (numpy.asarray(fn(z + 1j * shift))
              - numpy.asarray(fn(z - 1j * shift))) / (2 * step)
        partial.append(((dx - 1j * dy) / 2, (dx + 1j * dy) / 2))
    holomorphic = numpy.stack([p[0] for p in partial])
    antiholomorphic = numpy.stack([p[1] for p in partial])
    frame = numpy.asarray(model.frame_fn(z))
    return numpy.concatenate([
        contract('sj,j...->s...', frame, holomorphic),
        contract('sj,j...->s...', frame.conj(), antiholomorphic),
    ])


def frame_bracket_change(bracket: numpy.ndarray,
                         change: FrameChange) -> numpy.ndarray:
    """Structure constants in the frame `e' = M e`."""
    full = change.full()
    return contract('ap,bq,pqr,rd->abd', full, full, bracket,
                    numpy.linalg.inv(full))


def apply_frame_change(model: LieHermitianModel,
                       change: FrameChange) -> LieHermitianModel:
    """Re-express a model in another unitary frame."""
    if not isinstance(model, LieHermitianModel):
        raise NotImplementedError('Frame changes apply to Lie models only')
    if change.kind != FrameKind.UNITARY:
        raise ValueError('Only unitary frame changes keep the metric')
    return LieHermitianModel.from_bracket(
        frame_bracket_change(model.bracket, change), model.label)


def direct_sum(first: LieHermitianModel, second: LieHermitianModel,
               label: Optional[str] = None) -> LieHermitianModel:
    """Orthogonal direct sum of two Lie models."""
    n1, n = first.n, first.n + second.n
    C = numpy.zeros((n,) * 3, dtype=complex)
    D = numpy.zeros((n,) * 3, dtype=complex)
    C[:n1, :n1, :n1], C[n1:, n1:, n1:] = first.C, second.C
    D[:n1, :n1, :n1], D[n1:, n1:, n1:] = first.D, second.D
    return LieHermitianModel(n, C, D,
                             label or f'{first.label}+{second.label}')


def _complex_basis(J: numpy.ndarray) -> numpy.ndarray:
    """Real vectors `w_1 .. w_n` such that `w, Jw` is a basis."""
    size = len(J)
    chosen = numpy.zeros((size, 0))
    for vector in numpy.eye(size):
        candidate = numpy.column_stack([chosen, vector, J @ vector])
        if numpy.linalg.matrix_rank(candidate) == candidate.shape[1]:
            chosen = candidate
        if chosen.shape[1] == size:
            break
    return chosen[:, 0::2].T


def from_real_algebra(structure, J, metric=None, label: str = '',
                      ctx: ToleranceContext = None) -> LieHermitianModel:
    """Model of a real Lie algebra with a complex structure and a
    compatible inner product.

    Parameters
    ----------
    structure : array-like
        Real constants `s[p, q, r]` with `[u_p, u_q] = sum_r s[p, q, r] u_r`.
    J : array-like
        Complex structure, `J u_q = sum_p J[p, q] u_p`.
    metric : array-like, optional
        Gram matrix of the basis `u`, by default the identity.
    label : str, optional
        Model label.
    ctx : ToleranceContext, optional
        Tolerances.

    Raises
    ------
    InvalidModel
        `J` is not a complex structure, the metric is not `J`-invariant or
        `J` is not integrable.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    structure = numpy.asarray(structure, dtype=float)
    J = numpy.asarray(J, dtype=float)
    size = len(J)
    metric = numpy.eye(size) if metric is None else numpy.asarray(metric,
                                                                  dtype=float)
    if size % 2 or not approx_zero(J @ J + numpy.eye(size), ctx):
        raise InvalidModel('J is not a complex structure')
    if not approx_zero(J.T @ metric @ J - metric, ctx):
        raise InvalidModel('Metric is not J-invariant')

    real_basis = _complex_basis(J)
    holomorphic = real_basis - 1j * (J @ real_basis.T).T
    gram = holomorphic @ metric @ holomorphic.conj().T
    change = unitarize(gram, ctx)
    frame = change.matrix @ holomorphic
    full = numpy.vstack([frame, frame.conj()])
    bracket = contract('ap,bq,pqr,rd->abd', full, full, structure,
                       numpy.linalg.inv(full))
    n = size // 2
    if not approx_zero(bracket[:n, :n, n:], ctx,
                       scale=max_norm(bracket)):
        raise InvalidModel('Complex structure is not integrable')
    logger.debug('Built %r from a real algebra of dimension %d', label, size)
    return LieHermitianModel.from_bracket(bracket, label).validate(ctx)


def real_frame(n: int) -> numpy.ndarray:
    """Real orthonormal frame `sqrt(2) eps_i = e_i + conj(e_i)`,
    `sqrt(2) eps_{n+i} = i (e_i - conj(e_i))`, as rows of coefficients on
    the complexified frame."""
    eye = numpy.eye(n)
    return numpy.block([[eye, eye], [1j * eye, -1j * eye]]) / numpy.sqrt(2)