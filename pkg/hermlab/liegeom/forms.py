"""
Differential forms given by their components on the complexified frame.

A k-form is an alternating array of shape `(2n,) * k`; its value on
frame vectors is `alpha(x_a, x_b, ...) = alpha[a, b, ...]`.
"""

import math
from typing import Union

import numpy

from ..numlin import Jet, alternate
from .models import HermitianModel

_FORM_LETTERS = 'pqrstuvw'


def kahler_form(n: int) -> numpy.ndarray:
    """`omega = i sum_k phi_k ^ conj(phi_k)`."""
    omega = numpy.zeros((2 * n, 2 * n), dtype=complex)
    for k in range(n):
        omega[k, n + k] = 1j
        omega[n + k, k] = -1j
    return omega


def type_mask(n: int, degree: int, holomorphic: int) -> numpy.ndarray:
    """Boolean mask of the components of a `degree`-form with exactly
    `holomorphic` indices in the (1,0) range."""
    is_holomorphic = (numpy.arange(2 * n) < n).astype(int)
    count = numpy.zeros((2 * n,) * degree, dtype=int)
    for axis in range(degree):
        shape = [1] * degree
        shape[axis] = 2 * n
        count = count + is_holomorphic.reshape(shape)
    return count == holomorphic


def project_type(form: numpy.ndarray, p: int, q: int) -> numpy.ndarray:
    """(p, q)-part of a (p+q)-form."""
    form = numpy.asarray(form)
    n = form.shape[0] // 2
    return numpy.where(type_mask(n, p + q, p), form, 0)


def exterior_derivative(structure: Jet, form: Jet) -> Jet:
    """Exterior derivative of a form with non-constant components.

    `d alpha = (k+1) Alt(x_a alpha) - C(k+1, 2) Alt(alpha([x_a, x_b], ...))`,
    which is the invariant formula for `d` evaluated on frame vectors.
    The result loses one derivative level.
    """
    degree = len(form.shape)
    result = form.derivative().map(alternate) * (degree + 1)
    if degree >= 1:
        rest = _FORM_LETTERS[:degree - 1]
        contracted = Jet.einsum(f'abz,z{rest}->ab{rest}', structure, form)
        result = result - contracted.map(alternate) * math.comb(degree + 1, 2)
    return result


def ce_differential(model: HermitianModel,
                    form: Union[numpy.ndarray, Jet]) -> numpy.ndarray:
    """Chevalley-Eilenberg differential of a form with constant frame
    components (left-invariant on Lie models)."""
    if not isinstance(form, Jet):
        form = Jet.constant(form, model.dim, order=1)
    return exterior_derivative(model.structure_jet(1), form).value
