"""
Quantities derived from the Chern torsion components `T^j_{ik}`
(indexed `[i, k, j]`).
"""

from dataclasses import dataclass
from typing import Union

import numpy

from ..numlin import contract
from .connections import TorsionTensor


@dataclass(frozen=True, eq=False)
class TorsionDerived:
    """Torsion 1-form, B-tensor, phi-tensor and squared norm.

    Attributes
    ----------
    eta : numpy.ndarray
        `eta_i = sum_k T^k_{ki}`.
    B : numpy.ndarray
        `B[i, j] = B_{i jbar} = sum_{r,s} T^j_{rs} conj(T^i_{rs})`.
    phi : numpy.ndarray
        `phi[i, j] = phi_i^j = sum_r T^j_{ir} conj(eta_r)`.
    torsion_norm_sq : float
        `|T|^2`, the sum of `|T^j_{ik}|^2` over all indices, equal to
        `trace(B)`.
    """

    eta: numpy.ndarray
    B: numpy.ndarray
    phi: numpy.ndarray
    torsion_norm_sq: float

    @property
    def eta_norm(self) -> float:
        """`lambda = |eta|`."""
        return float(numpy.linalg.norm(self.eta))

    def sigma_b(self) -> numpy.ndarray:
        """`sigma_B = i sum B_{i jbar} phi_i ^ conj(phi_j)` as a 2-form."""
        n = len(self.B)
        sigma = numpy.zeros((2 * n, 2 * n), dtype=complex)
        sigma[:n, n:] = 1j * self.B
        sigma[n:, :n] = -1j * self.B.T
        return sigma


def torsion_components(torsion: Union[TorsionTensor, numpy.ndarray]
                       ) -> numpy.ndarray:
    if isinstance(torsion, TorsionTensor):
        return torsion.components
    return numpy.asarray(torsion, dtype=complex)


def torsion_derived(torsion: Union[TorsionTensor, numpy.ndarray]
                    ) -> TorsionDerived:
    """Compute :class:`TorsionDerived` from a torsion tensor or from its
    `[i, k, j]` components."""
    components = torsion_components(torsion)
    eta = contract('kik->i', components)
    B = contract('rsj,rsi->ij', components, components.conj())
    phi = contract('irj,r->ij', components, eta.conj())
    return TorsionDerived(eta, B, phi,
                          float(numpy.sum(numpy.abs(components) ** 2)))


def transform_torsion(components: numpy.ndarray,
                      matrix: numpy.ndarray) -> numpy.ndarray:
    """Torsion components in the unitary frame `e' = U e`:
    `T'^j_{ik} = sum U_{ia} U_{kb} T^c_{ab} conj(U_{jc})`."""
    return contract('ia,kb,abc,jc->ikj', matrix, matrix, components,
                    matrix.conj())
