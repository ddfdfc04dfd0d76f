"""
Canonical connections of a Hermitian model and their torsion.

A connection is stored by its coefficients on the complexified frame,
`gamma[a, b, d]` with `nabla_{x_a} x_b = sum_d gamma[a, b, d] x_d`, as a
:class:`~hermlab.numlin.Jet` so that frame derivatives are available to
curvature and covariant derivatives. The torsion is stored the same way,
`T(x_a, x_b) = sum_d T[a, b, d] x_d`; for (1,0) vectors this gives the
components `T^j_{ik} = T[i, k, j]`.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy
import scipy.linalg

from ..enums import ConnectionTag
from ..exceptions import SingularSystem
from ..numlin import Jet, conjugate_index, contract, max_norm
from .models import HermitianModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HermitianConnection:
    """Connection coefficients on the complexified frame.

    Parameters
    ----------
    gamma : Jet
        `gamma[a, b, d]` and its frame derivatives.
    tag : ConnectionTag
        Which canonical connection this is.
    t : Optional[float], optional
        Gauduchon parameter, when meaningful.
    """

    gamma: Jet
    tag: ConnectionTag
    t: Optional[float] = None

    @property
    def n(self) -> int:
        return self.gamma.shape[0] // 2

    @property
    def gamma_hol(self) -> numpy.ndarray:
        """`Gamma^j_{ik}` (direction `e_k`), indexed `[i, k, j]`."""
        n = self.n
        return contract('kij->ikj', self.gamma.value[:n, :n, :n])

    @property
    def gamma_antihol(self) -> numpy.ndarray:
        """`Gamma^j_{i kbar}` (direction `conj(e_k)`), indexed `[i, k, j]`."""
        n = self.n
        return contract('kij->ikj', self.gamma.value[n:, :n, :n])

    def matrix(self, direction) -> numpy.ndarray:
        """Connection matrix `theta(v)[b, d]` for a vector `v` given by its
        components on the complexified frame."""
        return contract('a,abd->bd', numpy.asarray(direction, complex),
                        self.gamma.value)

    def metric_defect(self) -> float:
        """Max-norm of `g(nabla x_b, x_e) + g(x_b, nabla x_e)`."""
        gamma = self.gamma.value
        bar = conjugate_index(len(gamma))
        lowered = gamma[:, :, bar]
        return max_norm(lowered + numpy.transpose(lowered, (0, 2, 1)))

    def type_defect(self) -> float:
        """Max-norm of the coefficients mixing (1,0) and (0,1) vectors."""
        n = self.n
        gamma = self.gamma.value
        return max(max_norm(gamma[:, :n, n:]), max_norm(gamma[:, n:, :n]))


@dataclass(frozen=True, eq=False)
class TorsionTensor:
    """Torsion `T[a, b, d]` on the complexified frame, as a jet."""

    full: Jet

    @property
    def n(self) -> int:
        return self.full.shape[0] // 2

    @property
    def components(self) -> numpy.ndarray:
        """`T^j_{ik}` indexed `[i, k, j]`."""
        n = self.n
        return self.full.value[:n, :n, :n]


def torsion_of(model: HermitianModel,
               connection: HermitianConnection) -> TorsionTensor:
    """Torsion `nabla_x y - nabla_y x - [x, y]` of a connection."""
    gamma = connection.gamma
    structure = model.structure_jet(gamma.order)
    swapped = gamma.map(lambda p: numpy.transpose(p, (1, 0, 2)))
    return TorsionTensor(gamma - swapped - structure)


def _flat_index(N: int, a: int, b: int, d: int) -> int:
    return (a * N + b) * N + d


@lru_cache(maxsize=None)
def _chern_system(n: int) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """Constraint matrix on the unknowns `gamma[a, b, d]` and the matrix
    selecting the structure constants feeding the right-hand side."""
    N = 2 * n
    bar = conjugate_index(N)
    holomorphic = numpy.arange(N) < n
    rows, selectors = [], []

    def add(entries, structure_index=None):
        row = numpy.zeros(N ** 3)
        for index, coefficient in entries:
            row[index] += coefficient
        rows.append(row)
        selector = numpy.zeros(N ** 3)
        if structure_index is not None:
            selector[structure_index] = 1.0
        selectors.append(selector)

    for a in range(N):
        for b in range(N):
            for d in range(N):
                # type preservation
                if holomorphic[b] != holomorphic[d]:
                    add([(_flat_index(N, a, b, d), 1.0)])
                # metric compatibility
                if b <= d:
                    add([(_flat_index(N, a, b, bar[d]), 1.0),
                         (_flat_index(N, a, d, bar[b]), 1.0)])
    # the (1,1) part of the torsion vanishes
    for a in range(n):
        for b in range(n, N):
            for d in range(N):
                add([(_flat_index(N, a, b, d), 1.0),
                     (_flat_index(N, b, a, d), -1.0)],
                    structure_index=_flat_index(N, a, b, d))
    return numpy.array(rows), numpy.array(selectors)


def chern_connection(model: HermitianModel
                     ) -> Tuple[HermitianConnection, TorsionTensor]:
    """Chern connection of a model and its torsion.

    The coefficients are the solution of one linear system: the
    connection preserves types, is metric and its torsion has no (1,1)
    part. All frame-derivative slices of the structure are solved at once
    as extra right-hand sides.

    Parameters
    ----------
    model : HermitianModel
        Lie or pointwise model.

    Returns
    -------
    Tuple[HermitianConnection, TorsionTensor]
        The connection (tag `chern`, `t = 0`) and its torsion.

    Raises
    ------
    SingularSystem
        The system is rank-deficient or the structure is not finite.
    """
    n, N = model.n, model.dim
    structure = model.structure_jet(2)
    slices = structure.slices()
    stacked = numpy.array([s.ravel() for s in slices]).T
    if not numpy.all(numpy.isfinite(stacked)):
        raise SingularSystem('Structure constants are not finite')

    system, selector = _chern_system(n)
    rhs = selector @ stacked
    solution, _, rank, _ = scipy.linalg.lstsq(system, rhs)
    if rank < N ** 3:
        raise SingularSystem(f'Chern system has rank {rank} < {N ** 3}')
    defect = max_norm(system @ solution - rhs)
    if defect > 1e-8 * max(1.0, max_norm(stacked)):
        logger.warning('Chern system of %r solved with defect %.3e; the'
                       ' bracket is probably not real', model.label, defect)

    pieces = [solution[:, k].reshape(N, N, N) for k in range(len(slices))]
    gamma = Jet.from_slices(pieces, structure.dim, structure.order)
    connection = HermitianConnection(gamma, ConnectionTag.CHERN, 0.0)
    return connection, torsion_of(model, connection)


def _gauduchon_shift(torsion: numpy.ndarray) -> numpy.ndarray:
    """Difference between the Bismut and Chern coefficients in terms of
    the Chern torsion."""
    N = len(torsion)
    n = N // 2
    bar = conjugate_index(N)
    holomorphic = numpy.arange(N) < n
    same_type = holomorphic[:, None] == holomorphic[None, :]
    swapped = contract('bad->abd', torsion)
    mixed = contract('dab->abd', torsion[bar][:, :, bar])
    return numpy.where(same_type[:, :, None], swapped, -mixed)


def gauduchon_connection(model: HermitianModel, t: float,
                         chern: Tuple[HermitianConnection,
                                      TorsionTensor] = None
                         ) -> HermitianConnection:
    """Member `t` of the Gauduchon line through the Chern (`t = 0`) and
    Bismut (`t = 2`) connections.

    On (1,0) directions the coefficients are
    `Gamma^j_{ik} + (t/2) T^j_{ik}` and
    `Gamma^j_{i kbar} - (t/2) conj(T^i_{jk})`.
    """
    connection, torsion = chern or chern_connection(model)
    shift = torsion.full.map(_gauduchon_shift)
    gamma = connection.gamma + shift * (t / 2)
    if t == 0:
        tag = ConnectionTag.CHERN
    elif t == 2:
        tag = ConnectionTag.BISMUT
    else:
        tag = ConnectionTag.GAUDUCHON
    return HermitianConnection(gamma, tag, float(t))


def bismut_connection(model: HermitianModel,
                      chern: Tuple[HermitianConnection,
                                   TorsionTensor] = None
                      ) -> HermitianConnection:
    """Bismut connection, the Gauduchon connection at `t = 2`."""
    return gauduchon_connection(model, 2.0, chern)


def _koszul(structure: numpy.ndarray) -> numpy.ndarray:
    bar = conjugate_index(len(structure))
    lowered = structure[:, :, bar]
    koszul = 0.5 * (lowered
                    - contract('bea->abe', lowered)
                    + contract('eab->abe', lowered))
    return koszul[:, :, bar]


def levi_civita(model: HermitianModel) -> HermitianConnection:
    """Levi-Civita connection by the Koszul formula on frame vectors,
    `2 g(nabla_x y, z) = g([x, y], z) - g([y, z], x) + g([z, x], y)`."""
    gamma = model.structure_jet(2).map(_koszul)
    return HermitianConnection(gamma, ConnectionTag.LEVI_CIVITA)


def connection_by_tag(model: HermitianModel, tag, t: float = None,
                      chern: Tuple[HermitianConnection,
                                   TorsionTensor] = None
                      ) -> HermitianConnection:
    """Build a connection from its tag (`t` required for `gauduchon`)."""
    tag = ConnectionTag(tag)
    if tag == ConnectionTag.CHERN:
        return (chern or chern_connection(model))[0]
    if tag == ConnectionTag.BISMUT:
        return bismut_connection(model, chern)
    if tag == ConnectionTag.GAUDUCHON:
        if t is None:
            raise ValueError('The Gauduchon connection needs `t`')
        return gauduchon_connection(model, t, chern)
    return levi_civita(model)
