"""
Curvature, covariant derivatives and Ricci contractions.

The curvature of a connection is stored fully lowered,
`R[a, b, d, h] = g(R(x_a, x_b) x_d, x_h)` with
`R(x, y) = nabla_x nabla_y - nabla_y nabla_x - nabla_[x, y]`. The
Hermitian components are `R_{i jbar k lbar} = R[i, n+j, k, n+l]`.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy

from ..enums import ConnectionTag
from ..numlin import Jet, conjugate_index, contract
from .connections import HermitianConnection, TorsionTensor
from .models import HermitianModel, real_frame

logger = logging.getLogger(__name__)

_SLOT_LETTERS = 'abcdefghijklm'


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """Lowered curvature tensor on the complexified frame.

    Parameters
    ----------
    full : Jet
        `R[a, b, d, h]` and, when available, its frame derivatives.
    tag : ConnectionTag
        Connection the curvature belongs to.
    t : Optional[float], optional
        Gauduchon parameter of that connection.
    """

    full: Jet
    tag: ConnectionTag
    t: Optional[float] = None

    @property
    def n(self) -> int:
        return self.full.shape[0] // 2

    @property
    def value(self) -> numpy.ndarray:
        return self.full.value

    def hermitian(self) -> numpy.ndarray:
        """`R_{i jbar k lbar}` indexed `[i, j, k, l]`."""
        n = self.n
        return self.value[:n, n:, :n, n:]

    def operator(self) -> numpy.ndarray:
        """`R(x_A, x_B, e_k, conj(e_l))` indexed `[A, B, k, l]`."""
        n = self.n
        return self.value[:, :, :n, n:]

    def part(self, kind: str) -> numpy.ndarray:
        """Components whose first two slots have type `'2,0'`, `'1,1'` or
        `'0,2'`."""
        n = self.n
        if kind == '2,0':
            return self.value[:n, :n]
        if kind == '0,2':
            return self.value[n:, n:]
        if kind == '1,1':
            return numpy.concatenate([self.value[:n, n:],
                                      self.value[n:, :n]])
        raise ValueError(f'Unknown type {kind!r}')


def curvature(model: HermitianModel,
              connection: HermitianConnection) -> CurvatureTensor:
    """Curvature of a connection.

    The jet order of the result is one less than the order of the
    connection coefficients.
    """
    gamma = connection.gamma
    structure = model.structure_jet(gamma.order)
    rate = gamma.derivative()
    operator = (rate - rate.map(lambda p: contract('abde->bade', p))
                + Jet.einsum('bdc,ace->abde', gamma, gamma)
                - Jet.einsum('adc,bce->abde', gamma, gamma)
                - Jet.einsum('abf,fde->abde', structure, gamma))
    bar = conjugate_index(model.dim)
    lowered = operator.map(lambda p: p[..., bar])
    return CurvatureTensor(lowered, connection.tag, connection.t)


def covariant_derivative(model: HermitianModel,
                         connection: HermitianConnection,
                         tensor: Union[TorsionTensor, CurvatureTensor, Jet],
                         upper: Sequence[int] = ()) -> Jet:
    """Covariant derivative with the direction as new leading slot.

    `(nabla_s S)[..]` is `x_s(S)` minus one contraction with the
    coefficients per lower slot, plus one per upper slot. Torsion tensors
    have their last slot upper, curvature tensors are fully lowered.

    Parameters
    ----------
    model : HermitianModel
        Model the tensor lives on.
    connection : HermitianConnection
        Connection to differentiate with.
    tensor : Union[TorsionTensor, CurvatureTensor, Jet]
        Tensor with at least one derivative level.
    upper : Sequence[int], optional
        Upper slots when a bare jet is given.

    Returns
    -------
    Jet
        `nabla S` indexed `[s, ...]`.
    """
    if isinstance(tensor, TorsionTensor):
        jet, upper = tensor.full, (2,)
    elif isinstance(tensor, CurvatureTensor):
        jet, upper = tensor.full, ()
    else:
        jet = tensor
    gamma = connection.gamma
    letters = _SLOT_LETTERS[:len(jet.shape)]
    result = jet.derivative()
    for slot, letter in enumerate(letters):
        moved = letters[:slot] + 'z' + letters[slot + 1:]
        if slot in upper:
            result = result + Jet.einsum(f'sz{letter},{moved}->s{letters}',
                                         gamma, jet)
        else:
            result = result - Jet.einsum(f's{letter}z,{moved}->s{letters}',
                                         gamma, jet)
    return result


@dataclass(frozen=True, eq=False)
class RicciSet:
    """The three Ricci contractions of a Hermitian curvature tensor.

    `ric1[i, j] = sum_k R_{i jbar k kbar}`,
    `ric2[i, j] = sum_k R_{k kbar i jbar}`,
    `ric3[i, j] = sum_k R_{k jbar i kbar}`; `s1` and `s3` are the traces.
    """

    ric1: numpy.ndarray
    ric2: numpy.ndarray
    ric3: numpy.ndarray
    s1: float
    s3: float
    tag: ConnectionTag = None
    t: Optional[float] = None


def ricci(model: HermitianModel, curv: CurvatureTensor) -> RicciSet:
    """Ricci contractions of a curvature tensor."""
    hermitian = curv.hermitian()
    ric1 = contract('ijkk->ij', hermitian)
    ric2 = contract('kkij->ij', hermitian)
    ric3 = contract('kjik->ij', hermitian)
    return RicciSet(ric1, ric2, ric3,
                    float(numpy.trace(ric1).real),
                    float(numpy.trace(ric3).real),
                    curv.tag, curv.t)


def riemannian_ricci(curv: CurvatureTensor) -> numpy.ndarray:
    """`Ric(x, y) = sum_i R(eps_i, x, y, eps_i)` over a real orthonormal
    frame, evaluated by brute force over that frame."""
    frame = real_frame(curv.n)
    return contract('ia,ic,axyc->xy', frame, frame, curv.value)


def unitary_ricci(curv: CurvatureTensor) -> numpy.ndarray:
    """Same contraction written on the unitary frame,
    `sum_i R(e_i, x, y, conj(e_i)) + R(conj(e_i), x, y, e_i)`."""
    n = curv.n
    value = curv.value
    return (contract('kxyk->xy', value[:n, :, :, n:])
            + contract('kxyk->xy', value[n:, :, :, :n]))
