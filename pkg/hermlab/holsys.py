"""
Symmetric and generalized holonomy systems.

A holonomy system is a Euclidean space `V` with an algebraic curvature
operator `Rm`, an optional torsion map `T` and a Lie algebra `g` of
skew endomorphisms containing every `Rm_{x,y}`. Arrays use an
orthonormal frame of `V` once :meth:`HolonomySystem.orthonormal` has
been applied:

* `Rm[a, b]` is the matrix of `Rm_{e_a, e_b}` acting on column vectors,
  so `<Rm_{e_a,e_b} e_c, e_d> = Rm[a, b, d, c]`;
* `T[a, b, s]` is the `e_s` component of `T(e_a, e_b)`;
* `g_basis` and `J` are matrices acting on column vectors.

The Nomizu algebra `g + V` has brackets `[A, A'] = AA' - A'A`,
`[A, x] = Ax` and `[x, y] = -Rm_{x,y} - T(x, y)`.
"""

import logging
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy

from .enums import ConnectionTag
from .exceptions import (HypothesisUnmet, InvalidModel, JacobiViolation,
                         NotParallel, Reducible, SingularT)
from .liegeom.connections import torsion_of
from .liegeom.curvature import covariant_derivative
from .liegeom.geometry import ModelGeometry
from .liegeom.models import HermitianModel, real_frame
from .numlin import (DEFAULT_TOLERANCE, ToleranceContext, approx_zero,
                     commutator, contract, conjugate_index,
                     invariant_subspaces, jacobi_tensor, killing_form,
                     lie_closure, max_norm, span_basis, span_coordinates,
                     unitarize)
from .report import ConditionReport

logger = logging.getLogger(__name__)


def _cyclic(tensor: numpy.ndarray) -> numpy.ndarray:
    """Cyclic sum over the first three axes."""
    return (tensor
            + numpy.moveaxis(tensor, (0, 1, 2), (1, 2, 0))
            + numpy.moveaxis(tensor, (0, 1, 2), (2, 0, 1)))


@dataclass(frozen=True, eq=False)
class HolonomySystem:
    """Holonomy system `{V, Rm, T, g}` (with `H` the inner product of V).

    Parameters
    ----------
    dim : int
        Real dimension of `V`.
    H : numpy.ndarray
        Inner product matrix.
    Rm : numpy.ndarray
        Curvature operators, shape `(dim, dim, dim, dim)`.
    T : numpy.ndarray, optional
        Torsion map, shape `(dim, dim, dim)`; absent for classical
        systems.
    g_basis : List[numpy.ndarray], optional
        Spanning set of the holonomy algebra; by default the Lie algebra
        generated by the curvature operators.
    J : numpy.ndarray, optional
        Complex structure of `V` for Hermitian systems.
    label : str, optional
        Name used in reports.
    """

    dim: int
    H: numpy.ndarray
    Rm: numpy.ndarray
    T: Optional[numpy.ndarray] = None
    g_basis: Optional[List[numpy.ndarray]] = None
    J: Optional[numpy.ndarray] = None
    label: str = ''

    def __post_init__(self):
        dim = int(self.dim)
        H = numpy.asarray(self.H, dtype=float)
        Rm = numpy.asarray(self.Rm, dtype=float)
        if H.shape != (dim, dim) or Rm.shape != (dim,) * 4:
            raise InvalidModel(f'Holonomy system {self.label!r}: H and Rm'
                               f' must have shapes {(dim,) * 2} and'
                               f' {(dim,) * 4}')
        object.__setattr__(self, 'dim', dim)
        object.__setattr__(self, 'H', H)
        object.__setattr__(self, 'Rm', Rm)
        if self.T is not None:
            T = numpy.asarray(self.T, dtype=float)
            if T.shape != (dim,) * 3:
                raise InvalidModel('T must have shape (dim, dim, dim)')
            object.__setattr__(self, 'T', T)
        if self.J is not None:
            object.__setattr__(self, 'J', numpy.asarray(self.J, dtype=float))
        if self.g_basis is None:
            object.__setattr__(self, 'g_basis',
                               holonomy_algebra_from_curvature(self))
        else:
            object.__setattr__(self, 'g_basis',
                               [numpy.asarray(A, dtype=float)
                                for A in self.g_basis])

    @property
    def torsion(self) -> numpy.ndarray:
        """`T`, or zeros for classical systems."""
        if self.T is None:
            return numpy.zeros((self.dim,) * 3)
        return self.T

    @property
    def is_generalized(self) -> bool:
        return self.T is not None and max_norm(self.T) > 0

    def orthonormal(self, ctx: ToleranceContext = None) -> 'HolonomySystem':
        """The same system written in an `H`-orthonormal frame."""
        if approx_zero(self.H - numpy.eye(self.dim), ctx):
            return self
        P = unitarize(self.H, ctx).matrix.real
        left = numpy.linalg.inv(P).T

        def endo(M):
            return left @ M @ P.T

        Rm = contract('ac,bd,cdst->abst', P, P, self.Rm)
        Rm = contract('us,abst,vt->abuv', left, Rm, P)
        T = None
        if self.T is not None:
            T = contract('ac,bd,cds,us->abu', P, P, self.T, left)
        return HolonomySystem(
            self.dim, numpy.eye(self.dim), Rm, T,
            [endo(A) for A in self.g_basis],
            None if self.J is None else endo(self.J), self.label)

    def restrict(self, basis: numpy.ndarray) -> 'HolonomySystem':
        """Restriction to the span of orthonormal columns `basis`,
        assumed invariant under `g`."""
        Q = numpy.asarray(basis, dtype=float)
        Rm = contract('pa,qb,pqst,sc,td->abcd', Q, Q, self.Rm, Q, Q)
        T = None
        if self.T is not None:
            T = contract('pa,qb,pqs,sc->abc', Q, Q, self.T, Q)
        g_basis = span_basis([Q.T @ A @ Q for A in self.g_basis])
        J = None if self.J is None else Q.T @ self.J @ Q
        return HolonomySystem(Q.shape[1], numpy.eye(Q.shape[1]), Rm, T,
                              g_basis, J, self.label)


def holonomy_algebra_from_curvature(system: HolonomySystem,
                                    tol: float = 1e-10
                                    ) -> List[numpy.ndarray]:
    """Lie algebra generated by the curvature operators `Rm_{x,y}`.

    Returns an orthonormal (Frobenius) basis; empty when `Rm = 0`.
    """
    dim = system.dim
    operators = [system.Rm[a, b] for a in range(dim)
                 for b in range(a + 1, dim)]
    return lie_closure(operators, tol)


def derivation_defects(system: HolonomySystem, A: numpy.ndarray):
    """`A(T)` and `A(Rm)` for the induced derivation actions."""
    T, Rm = system.torsion, system.Rm
    on_torsion = (contract('us,abs->abu', A, T)
                  - contract('sa,sbu->abu', A, T)
                  - contract('sb,asu->abu', A, T))
    on_curvature = (contract('us,abst->abut', A, Rm)
                    - contract('pa,pbst->abst', A, Rm)
                    - contract('pb,apst->abst', A, Rm)
                    - contract('abus,st->abut', Rm, A))
    return on_torsion, on_curvature


def validate_system(system: HolonomySystem,
                    ctx: ToleranceContext = None) -> ConditionReport:
    """Check the defining conditions of a (generalized) holonomy system.

    Entries are `holonomy` (every `Rm_{x,y}` lies in `g`), `bianchi`
    (cyclic sum of `Rm_{x,y} z + T(x, T(y, z))`), `torsion_bianchi`
    (cyclic sum of `Rm_{x, T(y, z)}`), `invariance` (`A(T) = A(Rm) = 0`,
    so the system is symmetric) and the consistency checks
    `curvature_skew` and `generators_skew`.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    system = system.orthonormal(ctx)
    dim, Rm, T = system.dim, system.Rm, system.torsion
    report = ConditionReport(system.label, ctx)

    outside = [span_coordinates(system.g_basis, Rm[a, b])[1]
               for a in range(dim) for b in range(dim)]
    report.add('holonomy', numpy.array(outside) if outside else 0.0)

    terms = (contract('abuc->abcu', Rm)
             + contract('bcs,asu->abcu', T, T))
    report.add('bianchi', _cyclic(terms))
    report.add('torsion_bianchi',
               _cyclic(contract('bcs,asuv->abcuv', T, Rm)))

    defects = [numpy.concatenate([d.ravel() for d in
                                  derivation_defects(system, A)])
               for A in system.g_basis]
    symmetric = report.add('invariance',
                           numpy.concatenate(defects) if defects else 0.0)
    report.add('curvature_skew', numpy.concatenate([
        (Rm + contract('bast->abst', Rm)).ravel(),
        (Rm + contract('abts->abst', Rm)).ravel()]))
    report.add('generators_skew',
               numpy.array([A + A.T for A in system.g_basis])
               if system.g_basis else 0.0)
    logger.debug('System %r: symmetric=%s', system.label, symmetric.holds)
    return report


@dataclass(frozen=True, eq=False)
class NomizuAlgebra:
    """The Lie algebra `g + V` of a holonomy system.

    Attributes
    ----------
    g_basis : List[numpy.ndarray]
        Frobenius-orthonormal basis of `g`; the first `dim_g` coordinates.
    dim_v : int
        Dimension of `V`; the last coordinates.
    bracket : numpy.ndarray
        Structure constants `[u_a, u_b] = sum_d bracket[a, b, d] u_d`.
    killing : numpy.ndarray
        Killing form `B'`.
    jacobi_residual : float
        Max-norm of the Jacobiator.
    """

    g_basis: List[numpy.ndarray]
    dim_v: int
    bracket: numpy.ndarray
    killing: numpy.ndarray
    jacobi_residual: float

    @property
    def dim_g(self) -> int:
        return len(self.g_basis)

    @property
    def total_dim(self) -> int:
        return self.dim_g + self.dim_v

    @property
    def killing_g(self) -> numpy.ndarray:
        return self.killing[:self.dim_g, :self.dim_g]

    @property
    def killing_mixed(self) -> numpy.ndarray:
        """`B'(A_i, e_a)` indexed `[i, a]`."""
        return self.killing[:self.dim_g, self.dim_g:]

    @property
    def killing_v(self) -> numpy.ndarray:
        return self.killing[self.dim_g:, self.dim_g:]

    def coordinates(self, matrices: numpy.ndarray) -> numpy.ndarray:
        """Coordinates in `g_basis` of matrices stacked on the last two
        axes."""
        if not self.g_basis:
            return numpy.zeros(matrices.shape[:-2] + (0,))
        return contract('kst,...st->...k', numpy.array(self.g_basis),
                        matrices)


def nomizu(system: HolonomySystem,
           ctx: ToleranceContext = None) -> NomizuAlgebra:
    """Assemble the Nomizu algebra of a holonomy system.

    Raises
    ------
    JacobiViolation
        If the bracket fails the Jacobi identity, which happens when the
        data is not a symmetric holonomy system.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    system = system.orthonormal(ctx)
    g_basis = span_basis(system.g_basis)
    p, m = len(g_basis), system.dim
    size = p + m
    bracket = numpy.zeros((size, size, size))
    basis = numpy.array(g_basis) if g_basis else numpy.zeros((0, m, m))

    for i, A in enumerate(g_basis):
        for j, B in enumerate(g_basis):
            bracket[i, j, :p] = contract('kst,st->k', basis, commutator(A, B))
        bracket[i, p:, p:] = A.T
        bracket[p:, i, p:] = -A.T
    bracket[p:, p:, :p] = -contract('kst,abst->abk', basis, system.Rm)
    bracket[p:, p:, p:] = -system.torsion

    residual = max_norm(jacobi_tensor(bracket))
    scale = max(1.0, max_norm(bracket) ** 2)
    if not approx_zero(residual, ctx, scale):
        raise JacobiViolation(f'Nomizu bracket of {system.label!r} violates'
                              f' Jacobi (residual {residual:.3e})')
    logger.debug('Nomizu algebra of %r: dim g = %d, dim V = %d',
                 system.label, p, m)
    return NomizuAlgebra(g_basis, m, bracket, killing_form(bracket), residual)


def killing_checks(algebra: NomizuAlgebra, system: HolonomySystem,
                   ctx: ToleranceContext = None) -> ConditionReport:
    """Identities satisfied by the Killing form `B'` of the Nomizu
    algebra.

    * `killing_g`: `B'|_g = K - 2<,>` with `K` the Killing form of `g` and
      `<A, A'> = tr(A'^t A) / 2`;
    * `killing_g_negative`: largest eigenvalue of `B'|_g` (reported in
      `detail`) is negative;
    * `killing_mixed`: `B'(C, x) = 2 <T(x, .), C>`;
    * `killing_invariant`: `B'([u, v], w) + B'(v, [u, w]) = 0`.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    system = system.orthonormal(ctx)
    report = ConditionReport(system.label, ctx)
    p = algebra.dim_g
    basis = numpy.array(algebra.g_basis).reshape(p, system.dim, system.dim)

    inner = contract('ist,jst->ij', basis, basis) / 2
    killing_of_g = killing_form(algebra.bracket[:p, :p, :p])
    report.add('killing_g', algebra.killing_g - killing_of_g + 2 * inner)
    eigenvalues = numpy.linalg.eigvalsh(algebra.killing_g) if p else \
        numpy.zeros(0)
    report.add('killing_g_negative',
               max(0.0, eigenvalues.max()) if p else 0.0,
               eigenvalues=eigenvalues)
    expected = contract('ist,ats->ia', basis, system.torsion)
    report.add('killing_mixed', algebra.killing_mixed - expected)
    S, K = algebra.bracket, algebra.killing
    report.add('killing_invariant',
               contract('uvk,kw->uvw', S, K) + contract('uwk,vk->uvw', S, K))
    return report


def is_irreducible(system: HolonomySystem, seed: int = 0,
                   tol: float = 1e-9) -> bool:
    """Whether `g` acts irreducibly; a zero algebra counts as
    irreducible."""
    if not system.g_basis:
        return True
    return len(invariant_subspaces(system.g_basis, system.dim, real=True,
                                   seed=seed, tol=tol)) == 1


def schur_lambda(algebra: NomizuAlgebra, system: HolonomySystem,
                 ctx: ToleranceContext = None):
    """Scalar `lambda` with `B'|_V = lambda H`.

    Returns
    -------
    Tuple[float, float]
        `lambda`, the average of `B'(e_a, e_a)`, and the max-norm
        deviation of `B'|_V - lambda H`.

    Raises
    ------
    Reducible
        If `g` leaves a proper subspace of `V` invariant.
    """
    system = system.orthonormal(ctx)
    if not is_irreducible(system):
        raise Reducible(f'Holonomy of {system.label!r} acts reducibly')
    killing_v = algebra.killing_v
    value = float(numpy.trace(killing_v)) / system.dim
    deviation = max_norm(killing_v - value * numpy.eye(system.dim))
    return value, deviation


def kostant_reconstruction(algebra: NomizuAlgebra, system: HolonomySystem,
                           ctx: ToleranceContext = None):
    """Rebuild the curvature from Lie algebra data:
    `Rm_{z,w} = -lambda T^{-1} P(z ^ w)`, with `P` the orthogonal
    projection onto `g` and `B(A, A') = <T(A), A'>`.

    Returns
    -------
    Tuple[numpy.ndarray, float]
        Reconstructed `Rm` and its max-norm residual against the stored
        one.

    Raises
    ------
    HypothesisUnmet
        For systems with torsion or with `lambda = 0`.
    SingularT
        If `B'|_g` is singular.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    system = system.orthonormal(ctx)
    if system.is_generalized:
        raise HypothesisUnmet('torsion_free')
    value, _ = schur_lambda(algebra, system, ctx)
    if approx_zero(value, ctx):
        raise HypothesisUnmet('lambda_nonzero',
                              'Kostant reconstruction needs lambda != 0')
    killing_g = algebra.killing_g
    condition = numpy.linalg.cond(killing_g)
    if not numpy.isfinite(condition) or condition > 1 / ctx.abs_tol:
        raise SingularT(f'Killing form on g is singular (condition'
                        f' {condition:.3e})')
    if condition > 1e6:
        warnings.warn(f'Ill-conditioned Killing form on g ({condition:.3e})',
                      Warning)
    basis = numpy.array(algebra.g_basis)
    projected = contract('kba->abk', basis)
    coordinates = contract('abk,lk->abl', projected,
                           numpy.linalg.inv(killing_g))
    rebuilt = -value * contract('abk,kst->abst', coordinates, basis)
    return rebuilt, max_norm(rebuilt - system.Rm)


def ricci_tensor(system: HolonomySystem) -> numpy.ndarray:
    """`Ric(x, y) = sum_i <Rm_{e_i, x} y, e_i>`."""
    return contract('iaib->ab', system.Rm)


def certificate_hypotheses(system: HolonomySystem,
                       ctx: ToleranceContext = None) -> ConditionReport:
    """Hypotheses of the Ricci-flat implies flat statement for systems
    with torsion.

    * `curvature_kills_torsion_image`: `Rm_{x,y} T(z, w) = 0` and
      `Rm_{x, T(y, z)} = 0`;
    * `torsion_skew`: `T(x, .)` is skew;
    * `hermitian_splitting`: `Rm_{x,y}` commutes with `J`,
      `Rm_{Jx,Jy} = Rm_{x,y}` and `T(Jx, y) = J T(x, y)`.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    system = system.orthonormal(ctx)
    Rm, T = system.Rm, system.torsion
    report = ConditionReport(system.label, ctx)
    report.add('curvature_kills_torsion_image', numpy.concatenate([
        contract('abus,cds->abcdu', Rm, T).ravel(),
        contract('bcs,asuv->abcuv', T, Rm).ravel()]))
    report.add('torsion_skew', T + contract('asb->abs', T))
    if system.J is None:
        report.add('hermitian_splitting', numpy.inf, status='no J')
    else:
        J = system.J
        report.add('hermitian_splitting', numpy.concatenate([
            (contract('abus,st->abut', Rm, J)
             - contract('us,abst->abut', J, Rm)).ravel(),
            (contract('pa,qb,pqst->abst', J, J, Rm) - Rm).ravel(),
            (contract('pa,pbs->abs', J, T)
             - contract('us,abs->abu', J, T)).ravel()]))
    return report


@dataclass
class AKCertificate:
    """Outcome of :func:`ak_certificate`.

    Attributes
    ----------
    ricci : numpy.ndarray
        Ricci tensor by direct contraction.
    flat : bool
        Whether `Rm` vanishes.
    certificate : ConditionReport
        Ricci agreement, lambda and the flatness implication.
    contradiction : bool
        True when the system is Ricci flat but not flat.
    lam : Optional[float]
        Schur scalar, `None` for reducible systems.
    ricci_killing : Optional[numpy.ndarray]
        Ricci tensor from the Killing form identity, when `lambda != 0`.
    blocks : List[AKCertificate]
        Certificates of the irreducible factors of a reducible system.
    """

    ricci: numpy.ndarray
    flat: bool
    certificate: ConditionReport
    contradiction: bool = False
    lam: Optional[float] = None
    ricci_killing: Optional[numpy.ndarray] = None
    blocks: List['AKCertificate'] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'ricci_norm': max_norm(self.ricci),
                'flat': self.flat,
                'contradiction': self.contradiction,
                'lambda': self.lam,
                'certificate': self.certificate.to_dict(),
                'blocks': [block.to_dict() for block in self.blocks]}


def _irreducible_certificate(system: HolonomySystem,
                             ctx: ToleranceContext) -> AKCertificate:
    algebra = nomizu(system, ctx)
    value, deviation = schur_lambda(algebra, system, ctx)
    ricci = ricci_tensor(system)
    flat = approx_zero(system.Rm, ctx)
    report = ConditionReport(system.label, ctx)
    report.add('schur', deviation, lam=value)
    scale = max(1.0, max_norm(system.Rm) ** 2)

    ricci_killing = None
    if approx_zero(value, ctx, scale):
        report.add('lambda_zero_flat', system.Rm, lam=value)
    else:
        coordinates = algebra.coordinates(system.Rm)
        ricci_killing = contract('aik,kl,bil->ab', coordinates,
                                 algebra.killing_g, coordinates) / value
        report.add('ricci_agreement', ricci - ricci_killing,
                   tol=ctx.abs_tol + ctx.rel_tol * scale)
    ricci_flat = approx_zero(ricci, ctx, scale)
    report.add('ricci_flat_implies_flat', system.Rm,
               hypothesis=ricci_flat)
    contradiction = ricci_flat and not flat
    if contradiction:
        logger.error('System %r is Ricci flat but not flat', system.label)
        warnings.warn(f'Ricci flat system {system.label!r} is not flat',
                      Warning)
    return AKCertificate(ricci, flat, report, contradiction, value,
                         ricci_killing)


def ak_certificate(system: HolonomySystem,
                   ctx: ToleranceContext = None) -> AKCertificate:
    """Certify on one instance that Ricci flatness forces flatness.

    The Ricci tensor is computed by contraction and, when `lambda != 0`,
    by `Ric(x, x) = (1/lambda) sum_i B'(Rm_{x,e_i}, Rm_{x,e_i})`. A
    reducible system is split into the irreducible factors of its
    holonomy and each factor is certified separately.

    Raises
    ------
    HypothesisUnmet
        If the system is not symmetric or, when it has torsion, if the
        curvature does not vanish on the image of `T` or neither
        `torsion_skew` nor `hermitian_splitting` holds.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    system = system.orthonormal(ctx)
    validation = validate_system(system, ctx)
    if not validation.holds('invariance'):
        raise HypothesisUnmet('symmetric')
    if system.is_generalized:
        hypotheses = certificate_hypotheses(system, ctx)
        if not hypotheses.holds('curvature_kills_torsion_image'):
            raise HypothesisUnmet('curvature_kills_torsion_image')
        if not (hypotheses.holds('torsion_skew')
                or hypotheses.holds('hermitian_splitting')):
            raise HypothesisUnmet('torsion_skew_or_hermitian_splitting')

    if is_irreducible(system):
        return _irreducible_certificate(system, ctx)

    blocks = invariant_subspaces(system.g_basis, system.dim, real=True)
    certificates = [_irreducible_certificate(system.restrict(block), ctx)
                    for block in blocks]
    ricci = ricci_tensor(system)
    report = ConditionReport(system.label, ctx)
    for k, certificate in enumerate(certificates):
        report.extend(certificate.certificate, prefix=f'block{k}.')
    logger.info('System %r split into %d irreducible blocks', system.label,
                len(blocks))
    return AKCertificate(ricci, all(c.flat for c in certificates), report,
                         any(c.contradiction for c in certificates),
                         blocks=certificates)


def _realification(n: int, subbundle: Optional[numpy.ndarray]):
    if subbundle is None:
        return real_frame(n)
    vectors = numpy.asarray(subbundle, dtype=complex).reshape(n, -1).T
    real = numpy.hstack([vectors, vectors.conj()])
    imaginary = numpy.hstack([1j * vectors, -1j * vectors.conj()])
    return numpy.vstack([real, imaginary]) / numpy.sqrt(2)


def from_model(model: HermitianModel, connection_tag='chern',
               subbundle: Sequence = None, t: float = None,
               ctx: ToleranceContext = None) -> HolonomySystem:
    """Holonomy system of an Ambrose-Singer connection at the model's
    base point.

    Parameters
    ----------
    model : HermitianModel
        Model (or an existing :class:`ModelGeometry`).
    connection_tag : ConnectionTag or str, optional
        Connection, by default Chern. Chern systems are classical; the
        other connections keep their torsion.
    subbundle : array-like, optional
        Orthonormal (1,0)-vectors (as columns) spanning a parallel
        invariant subbundle; by default the whole tangent space.
    t : float, optional
        Gauduchon parameter when `connection_tag` is `gauduchon`.
    ctx : ToleranceContext, optional
        Tolerances.

    Raises
    ------
    NotParallel
        If the torsion or the curvature of the connection is not
        parallel.
    """
    geometry = (model if isinstance(model, ModelGeometry)
                else ModelGeometry(model, ctx))
    ctx = geometry.ctx
    tag = ConnectionTag(connection_tag)
    connection = geometry.connection(tag, t)
    torsion = torsion_of(geometry.model, connection)
    curv = geometry.curvature(tag, t)
    for name, tensor, value in (('Torsion', torsion, torsion.full.value),
                                ('Curvature', curv, curv.value)):
        nabla = covariant_derivative(geometry.model, connection,
                                     tensor).value
        scale = max(1.0, max_norm(value))
        if not approx_zero(nabla, ctx, scale):
            raise NotParallel(f'{name} of the {tag.value} connection of'
                              f' {geometry.model.label!r} is not parallel'
                              f' (residual {max_norm(nabla):.3e})')

    n = geometry.n
    frame = _realification(n, subbundle)
    dim = len(frame)
    lowered = contract('pa,qb,rc,sd,abcd->pqrs', frame, frame, frame,
                       frame, curv.value)
    Rm = contract('pqrs->pqsr', lowered).real

    sign = numpy.concatenate([numpy.ones(n), -numpy.ones(n)])
    bar = conjugate_index(2 * n)
    J = contract('pa,a,sa->sp', frame, 1j * sign, frame[:, bar]).real
    T = None
    if tag != ConnectionTag.CHERN:
        lowered_torsion = geometry.lowered(torsion.full).value
        T = contract('pa,qb,sc,abc->pqs', frame, frame, frame,
                     lowered_torsion).real
    system = HolonomySystem(dim, numpy.eye(dim), Rm, T, None, J,
                            f'{geometry.model.label}:{tag.value}')
    logger.info('Holonomy system of %r: dim V = %d, dim g = %d',
                geometry.model.label, dim, len(system.g_basis))
    return system
