"""
Dense complex linear algebra shared by the geometry modules.

Tensors are plain `numpy.ndarray` objects of complex dtype; the index
order of every geometric tensor is documented where the tensor is
built (see :mod:`hermlab.liegeom`). This module holds the pieces that
know nothing about geometry: tolerances, frame changes, Cholesky
unitarization, invariant subspaces, Lie closures, 2-jets and
alternating multilinear forms.
"""

import dataclasses
import itertools
import logging
import math
import os
import warnings
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy
import scipy.linalg
import scipy.stats

from .enums import FrameKind
from .exceptions import NotPositiveDefinite, NotUnitary

logger = logging.getLogger(__name__)

ENV_TOLERANCE = 'HERMLAB_TOL'


@dataclass(frozen=True)
class ToleranceContext:
    """Tolerance policy threaded through every numerical decision.

    Parameters
    ----------
    abs_tol : float, optional
        Absolute threshold under which a residual counts as zero,
        by default 1e-9.
    rel_tol : float, optional
        Threshold relative to a reference scale, by default 1e-9.
    fd_tol : float, optional
        Threshold for finite-difference cross-checks, by default 1e-6.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    fd_tol: float = 1e-6

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not value > 0:
                raise ValueError(f'Tolerance `{field.name}` must be strictly'
                                 f' positive, got {value}')

    @classmethod
    def from_env(cls, **overrides) -> 'ToleranceContext':
        """Build a context honouring the `HERMLAB_TOL` environment
        variable as `abs_tol`. Explicit keyword arguments win."""
        env_value = os.environ.get(ENV_TOLERANCE)
        if env_value and 'abs_tol' not in overrides:
            overrides['abs_tol'] = float(env_value)
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return cls(**overrides)

    def replace(self, **changes) -> 'ToleranceContext':
        """Copy of this context with some fields changed."""
        return dataclasses.replace(self, **changes)


DEFAULT_TOLERANCE = ToleranceContext()


def max_norm(tensor) -> float:
    """Largest absolute entry (0 for empty tensors)."""
    tensor = numpy.asarray(tensor)
    if tensor.size == 0:
        return 0.0
    return float(numpy.max(numpy.abs(tensor)))


def approx_zero(tensor, ctx: ToleranceContext = None,
                scale: float = 1.0) -> bool:
    """Whether every entry is below `abs_tol + rel_tol * scale`."""
    ctx = ctx or DEFAULT_TOLERANCE
    return max_norm(tensor) <= ctx.abs_tol + ctx.rel_tol * abs(scale)


def contract(subscripts: str, *tensors) -> numpy.ndarray:
    """Contract tensors over paired indices given in Einstein notation."""
    return numpy.einsum(subscripts, *tensors, optimize=True)


def conjugate_index(dim: int) -> numpy.ndarray:
    """Permutation sending a complexified frame index to the index of
    its conjugate vector: `a -> (a + n) mod 2n`."""
    half = dim // 2
    return (numpy.arange(dim) + half) % dim


@dataclass(frozen=True, eq=False)
class FrameChange:
    """Change of a (1,0)-frame: the new frame is `e'_i = sum_j M[i, j] e_j`.

    Parameters
    ----------
    matrix : numpy.ndarray
        Square complex matrix `M`.
    kind : FrameKind, optional
        Whether `M` is declared unitary, by default unitary.
    """

    matrix: numpy.ndarray
    kind: FrameKind = FrameKind.UNITARY

    def __post_init__(self):
        matrix = numpy.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError('A frame change needs a square matrix')
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)
        object.__setattr__(self, 'kind', FrameKind(self.kind))
        if self.kind == FrameKind.UNITARY:
            defect = matrix @ matrix.conj().T - numpy.eye(len(matrix))
            if not approx_zero(defect):
                raise NotUnitary('Frame change declared unitary is not'
                                 f' (defect {max_norm(defect):.3e})')

    @property
    def n(self) -> int:
        """Complex dimension."""
        return len(self.matrix)

    def full(self) -> numpy.ndarray:
        """Matrix acting on the complexified frame `(e, e-bar)`."""
        return scipy.linalg.block_diag(self.matrix, self.matrix.conj())

    def inverse(self) -> 'FrameChange':
        """The change going back to the original frame."""
        if self.kind == FrameKind.UNITARY:
            return FrameChange(self.matrix.conj().T, FrameKind.UNITARY)
        return FrameChange(numpy.linalg.inv(self.matrix), FrameKind.GENERAL)

    def then(self, other: 'FrameChange') -> 'FrameChange':
        """Compose with a change applied afterwards."""
        kind = (FrameKind.UNITARY
                if self.kind == other.kind == FrameKind.UNITARY
                else FrameKind.GENERAL)
        return FrameChange(other.matrix @ self.matrix, kind)

    @classmethod
    def identity(cls, n: int) -> 'FrameChange':
        """The trivial change."""
        return cls(numpy.eye(n))

    @classmethod
    def random_unitary(cls, n: int,
                       rng: numpy.random.Generator) -> 'FrameChange':
        """Haar-random unitary change drawn from `rng`."""
        if n == 1:
            return cls(numpy.exp(2j * numpy.pi * rng.random()).reshape(1, 1))
        return cls(scipy.stats.unitary_group.rvs(n, random_state=rng))


def unitarize(frame_gram, ctx: ToleranceContext = None) -> FrameChange:
    """Frame change turning a frame with Gram matrix `G` into a unitary
    one.

    With `G = L L*` (Cholesky, `L` lower triangular) the returned matrix
    is `P = L^{-1}`, so that `P G P* = I` and `P` is lower triangular.

    Parameters
    ----------
    frame_gram : array-like
        Hermitian positive definite matrix `G[i, j] = <v_i, conj(v_j)>`.
    ctx : ToleranceContext, optional
        Tolerances, by default `DEFAULT_TOLERANCE`.

    Returns
    -------
    FrameChange
        Change with `kind` unitary when `P` happens to be unitary.

    Raises
    ------
    NotPositiveDefinite
        `G` is not Hermitian or some Cholesky pivot is `<= abs_tol`.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    gram = numpy.atleast_2d(numpy.asarray(frame_gram, dtype=complex))
    if not approx_zero(gram - gram.conj().T, ctx, scale=max_norm(gram)):
        raise NotPositiveDefinite('Gram matrix is not Hermitian')
    try:
        lower = scipy.linalg.cholesky(gram, lower=True)
    except numpy.linalg.LinAlgError as e:
        raise NotPositiveDefinite(f'Gram matrix is not positive: {e}') from e
    pivots = numpy.abs(numpy.diag(lower)) ** 2
    if pivots.min() <= ctx.abs_tol:
        raise NotPositiveDefinite(f'Cholesky pivot {pivots.min():.3e}'
                                  f' below tolerance {ctx.abs_tol}')
    change = scipy.linalg.solve_triangular(lower, numpy.eye(len(gram)),
                                           lower=True)
    unitary = approx_zero(change @ change.conj().T - numpy.eye(len(gram)))
    return FrameChange(change,
                       FrameKind.UNITARY if unitary else FrameKind.GENERAL)


def span_basis(matrices: Sequence[numpy.ndarray],
               tol: float = 1e-10) -> List[numpy.ndarray]:
    """Orthonormal basis (Frobenius, over the reals) of the real span
    of `matrices`."""
    matrices = [numpy.asarray(m) for m in matrices]
    if not matrices:
        return []
    shape = matrices[0].shape
    is_complex = any(numpy.iscomplexobj(m) for m in matrices)
    rows = numpy.array([_real_vector(m, is_complex) for m in matrices])
    _, singular, vh = numpy.linalg.svd(rows, full_matrices=False)
    if singular.size == 0 or singular[0] <= tol:
        return []
    rank = int(numpy.sum(singular > tol * max(1.0, singular[0])))
    return [_from_real_vector(v, shape, is_complex) for v in vh[:rank]]


def span_coordinates(basis: Sequence[numpy.ndarray],
                     matrix: numpy.ndarray) -> Tuple[numpy.ndarray, float]:
    """Real least-squares coordinates of `matrix` in `basis`, together
    with the max-norm of the part outside the span."""
    matrix = numpy.asarray(matrix)
    if not basis:
        return numpy.zeros(0), max_norm(matrix)
    is_complex = (numpy.iscomplexobj(matrix)
                  or any(numpy.iscomplexobj(b) for b in basis))
    columns = numpy.array([_real_vector(b, is_complex) for b in basis]).T
    target = _real_vector(matrix, is_complex)
    coords, *_ = scipy.linalg.lstsq(columns, target)
    residual = max_norm(columns @ coords - target)
    return coords, residual


def _real_vector(matrix, is_complex: bool) -> numpy.ndarray:
    if is_complex:
        matrix = numpy.asarray(matrix, dtype=complex)
        return numpy.concatenate([matrix.real.ravel(), matrix.imag.ravel()])
    return numpy.asarray(matrix, dtype=float).ravel()


def _from_real_vector(vector, shape, is_complex: bool) -> numpy.ndarray:
    if is_complex:
        half = len(vector) // 2
        return (vector[:half] + 1j * vector[half:]).reshape(shape)
    return vector.reshape(shape)


def commutator(a: numpy.ndarray, b: numpy.ndarray) -> numpy.ndarray:
    """Matrix commutator `ab - ba`."""
    return a @ b - b @ a


def lie_closure(matrices: Sequence[numpy.ndarray], tol: float = 1e-10,
                max_rounds: int = 64) -> List[numpy.ndarray]:
    """Smallest real Lie algebra of matrices containing `matrices`.

    The span is grown by commutators of basis elements until its
    dimension stabilizes.
    """
    basis = span_basis(matrices, tol)
    for round_ in range(max_rounds):
        brackets = [commutator(a, b)
                    for a, b in itertools.combinations(basis, 2)]
        grown = span_basis(basis + brackets, tol)
        if len(grown) == len(basis):
            logger.debug('Lie closure stable after %d rounds, dim %d',
                         round_, len(basis))
            return grown
        basis = grown
    raise RuntimeError('Lie closure did not stabilize')


def jacobi_tensor(structure: numpy.ndarray) -> numpy.ndarray:
    """Jacobiator of structure constants `c[a, b, d]`
    (`[x_a, x_b] = sum_d c[a, b, d] x_d`), indexed `[a, b, d, e]`."""
    c = structure
    return (contract('bdf,afe->abde', c, c)
            + contract('daf,bfe->abde', c, c)
            + contract('abf,dfe->abde', c, c))


def killing_form(structure: numpy.ndarray) -> numpy.ndarray:
    """Killing form `tr(ad_u ad_v)` of structure constants."""
    return contract('ubg,vgb->uv', structure, structure)


def commutant_basis(generators: Sequence[numpy.ndarray], dim: int,
                    real: bool = False,
                    tol: float = 1e-9) -> List[numpy.ndarray]:
    """Basis of the matrices commuting with every generator."""
    eye = numpy.eye(dim)
    if not generators:
        system = numpy.zeros((1, dim * dim))
    else:
        system = numpy.vstack([numpy.kron(g, eye) - numpy.kron(eye, g.T)
                               for g in generators])
    if real:
        system = numpy.real_if_close(system)
    kernel = scipy.linalg.null_space(system, rcond=tol)
    return [kernel[:, k].reshape(dim, dim) for k in range(kernel.shape[1])]


def orbit_span(generators: Sequence[numpy.ndarray], seed: numpy.ndarray,
               tol: float = 1e-9) -> numpy.ndarray:
    """Orthonormal basis of the smallest subspace containing `seed` and
    stable under every generator."""
    basis = scipy.linalg.orth(numpy.asarray(seed).reshape(-1, 1), rcond=tol)
    while True:
        images = [g @ basis for g in generators]
        grown = scipy.linalg.orth(numpy.hstack([basis] + images), rcond=tol)
        if grown.shape[1] == basis.shape[1]:
            return grown
        basis = grown


def invariant_subspaces(generators: Sequence[numpy.ndarray],
                        dim: Optional[int] = None, *, real: bool = False,
                        seed: int = 0,
                        tol: float = 1e-9) -> List[numpy.ndarray]:
    """Decompose a space into minimal subspaces invariant under a set
    of endomorphisms.

    Each step draws a random self-adjoint element of the commutant of
    the generators restricted to the remaining space, takes one of its
    eigenvectors as seed and grows its orbit span. The orthogonal
    complement is then decomposed in turn. With no generators the space
    is split into lines.

    Parameters
    ----------
    generators : Sequence[numpy.ndarray]
        Skew-adjoint matrices of the same size.
    dim : Optional[int], optional
        Dimension of the space, needed when `generators` is empty.
    real : bool, optional
        Decompose over the reals (orthogonal representations),
        by default False.
    seed : int, optional
        Seed of the random commutant element, by default 0.
    tol : float, optional
        Rank threshold, by default 1e-9.

    Returns
    -------
    List[numpy.ndarray]
        Orthonormal bases (as columns) of pairwise orthogonal blocks
        spanning the whole space.
    """
    generators = [numpy.asarray(g) for g in generators]
    if dim is None:
        if not generators:
            raise ValueError('`dim` is required when there are no generators')
        dim = generators[0].shape[0]
    dtype = float if real else complex
    generators = [g.real if real else g.astype(complex) for g in generators]
    if any(not approx_zero(g + g.conj().T, scale=max_norm(g))
           for g in generators):
        warnings.warn('Generators are not skew-adjoint; complements of'
                      ' invariant subspaces may not be invariant.', Warning)

    rng = numpy.random.default_rng(seed)
    blocks = []
    remaining = numpy.eye(dim, dtype=dtype)
    while remaining.shape[1] > 0:
        restricted = [remaining.conj().T @ g @ remaining for g in generators]
        local_dim = remaining.shape[1]
        commutant = commutant_basis(restricted, local_dim, real, tol)
        coefficients = rng.standard_normal(len(commutant))
        if not real:
            coefficients = coefficients + 1j * rng.standard_normal(
                len(commutant))
        element = sum((c * m for c, m in zip(coefficients, commutant)),
                      numpy.zeros((local_dim, local_dim), dtype=dtype))
        _, eigenvectors = scipy.linalg.eigh(element + element.conj().T)
        span = orbit_span(restricted, eigenvectors[:, 0], tol)
        blocks.append(remaining @ span)
        rest = scipy.linalg.null_space(span.conj().T, rcond=tol)
        remaining = remaining @ rest
    logger.debug('Decomposed dimension %d into blocks %s', dim,
                 [b.shape[1] for b in blocks])
    return blocks


def permutation_sign(permutation: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of images."""
    permutation = list(permutation)
    sign = 1
    for i in range(len(permutation)):
        while permutation[i] != i:
            j = permutation[i]
            permutation[i], permutation[j] = permutation[j], permutation[i]
            sign = -sign
    return sign


def alternate(tensor: numpy.ndarray) -> numpy.ndarray:
    """Antisymmetrization over all axes, `(1/k!) sum sgn(s) T o s`."""
    tensor = numpy.asarray(tensor)
    k = tensor.ndim
    if k <= 1:
        return tensor.copy()
    result = numpy.zeros_like(tensor)
    for permutation in itertools.permutations(range(k)):
        result = result + (permutation_sign(permutation)
                           * numpy.transpose(tensor, permutation))
    return result / math.factorial(k)


def wedge(alpha: numpy.ndarray, beta: numpy.ndarray) -> numpy.ndarray:
    """Wedge product of alternating component arrays, normalized so that
    `(a ^ b)(x, y) = a(x) b(y) - a(y) b(x)` on 1-forms."""
    alpha = numpy.asarray(alpha)
    beta = numpy.asarray(beta)
    k, l = alpha.ndim, beta.ndim
    return math.comb(k + l, k) * alternate(numpy.multiply.outer(alpha, beta))


class Jet:
    """A tensor-valued function at a point with its first two frame
    derivatives.

    `d1[s]` is `x_s(value)` and `d2[r, s]` is `x_r(x_s(value))` for the
    complexified frame `x_0 .. x_{2n-1}`. Constant data (left-invariant
    models) carry zero derivatives. Linear operations act slice by
    slice; products follow the Leibniz rule through :meth:`einsum`.

    Parameters
    ----------
    value : array-like
        Value at the point.
    d1 : array-like, optional
        First derivatives, leading axis the frame direction.
    d2 : array-like, optional
        Second derivatives, two leading frame axes. Requires `d1`.
    """

    def __init__(self, value, d1=None, d2=None):
        self.value = numpy.asarray(value, dtype=complex)
        self.d1 = None if d1 is None else numpy.asarray(d1, dtype=complex)
        self.d2 = None if d2 is None else numpy.asarray(d2, dtype=complex)
        if self.d2 is not None and self.d1 is None:
            raise ValueError('Second derivatives need first derivatives')

    @classmethod
    def constant(cls, value, dim: int, order: int = 2) -> 'Jet':
        """Jet of a constant function on a frame of size `dim`."""
        value = numpy.asarray(value, dtype=complex)
        d1 = numpy.zeros((dim,) + value.shape, complex) if order >= 1 else None
        d2 = (numpy.zeros((dim, dim) + value.shape, complex)
              if order >= 2 else None)
        return cls(value, d1, d2)

    @property
    def order(self) -> int:
        """Number of derivative levels carried."""
        if self.d1 is None:
            return 0
        return 1 if self.d2 is None else 2

    @property
    def shape(self) -> tuple:
        return self.value.shape

    @property
    def dim(self) -> Optional[int]:
        """Size of the frame the derivatives are taken along."""
        return None if self.d1 is None else self.d1.shape[0]

    def truncate(self, order: int) -> 'Jet':
        """Drop derivative levels above `order`."""
        return Jet(self.value,
                   self.d1 if order >= 1 else None,
                   self.d2 if order >= 2 else None)

    def derivative(self) -> 'Jet':
        """Jet of `x_s(value)`, indexed with the direction `s` first."""
        if self.d1 is None:
            raise ValueError('Jet carries no derivative')
        return Jet(self.d1, self.d2)

    def slices(self) -> List[numpy.ndarray]:
        """Value followed by every derivative component, each with the
        shape of the value."""
        pieces = [self.value]
        if self.d1 is not None:
            pieces.extend(self.d1)
        if self.d2 is not None:
            pieces.extend(self.d2.reshape((-1,) + self.shape))
        return pieces

    @classmethod
    def from_slices(cls, pieces: Sequence[numpy.ndarray], dim: Optional[int],
                    order: int) -> 'Jet':
        """Inverse of :meth:`slices`."""
        pieces = [numpy.asarray(p, dtype=complex) for p in pieces]
        shape = pieces[0].shape
        d1 = numpy.stack(pieces[1:1 + dim]) if order >= 1 else None
        d2 = (numpy.stack(pieces[1 + dim:]).reshape((dim, dim) + shape)
              if order >= 2 else None)
        return cls(pieces[0], d1, d2)

    def map(self, fn: Callable[[numpy.ndarray], numpy.ndarray]) -> 'Jet':
        """Apply a linear map (with constant coefficients) slice-wise."""
        return Jet.from_slices([fn(p) for p in self.slices()], self.dim,
                               self.order)

    def conj(self) -> 'Jet':
        """Jet of the complex conjugate: `x_s(conj f) = conj(x_sbar f)`."""
        if self.d1 is None:
            return Jet(self.value.conj())
        bar = conjugate_index(self.dim)
        d2 = None if self.d2 is None else self.d2[bar][:, bar].conj()
        return Jet(self.value.conj(), self.d1[bar].conj(), d2)

    def __getitem__(self, key) -> 'Jet':
        return self.map(lambda p: p[key])

    def __add__(self, other: 'Jet') -> 'Jet':
        return _combine(self, other, 1.0)

    def __sub__(self, other: 'Jet') -> 'Jet':
        return _combine(self, other, -1.0)

    def __neg__(self) -> 'Jet':
        return self.map(lambda p: -p)

    def __mul__(self, scalar) -> 'Jet':
        return self.map(lambda p: scalar * p)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> 'Jet':
        return self.map(lambda p: p / scalar)

    @staticmethod
    def einsum(subscripts: str, left: 'Jet', right: 'Jet') -> 'Jet':
        """Bilinear contraction of two jets with the Leibniz rule.

        `subscripts` is a two-operand explicit einsum string using
        lowercase letters only.
        """
        inputs, output = subscripts.split('->')
        sub_l, sub_r = inputs.split(',')
        value = contract(subscripts, left.value, right.value)
        order = min(left.order, right.order)
        d1 = d2 = None
        if order >= 1:
            d1 = (contract(f'Y{sub_l},{sub_r}->Y{output}', left.d1,
                           right.value)
                  + contract(f'{sub_l},Y{sub_r}->Y{output}', left.value,
                             right.d1))
        if order >= 2:
            d2 = (contract(f'XY{sub_l},{sub_r}->XY{output}', left.d2,
                           right.value)
                  + contract(f'Y{sub_l},X{sub_r}->XY{output}', left.d1,
                             right.d1)
                  + contract(f'X{sub_l},Y{sub_r}->XY{output}', left.d1,
                             right.d1)
                  + contract(f'{sub_l},XY{sub_r}->XY{output}', left.value,
                             right.d2))
        return Jet(value, d1, d2)


def _combine(left: Jet, right: Jet, sign: float) -> Jet:
    order = min(left.order, right.order)
    left, right = left.truncate(order), right.truncate(order)
    pieces = [a + sign * b for a, b in zip(left.slices(), right.slices())]
    return Jet.from_slices(pieces, left.dim, order)
