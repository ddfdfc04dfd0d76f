from typing import Iterable

import numpy
from jinja2.nativetypes import Environment


def _render_list(env: Environment, list_: list, template: dict):
    """Render Jinja templates in list recursively."""
    for index, value in enumerate(list_):
        if isinstance(value, str) and '{{' in value:
            list_[index] = env.from_string(value).render(**template)
        elif isinstance(value, dict):
            _render_dict(env, value, template)
        elif isinstance(value, list):
            _render_list(env, value, template)


def _render_dict(env: Environment, dict_: dict, template: dict):
    """Render Jinja templates in dict recursively.

    It will render only strings containing `{{` to prevent
    unattended renderings."""
    for key, value in dict_.items():
        if isinstance(value, str) and '{{' in value:
            dict_[key] = env.from_string(value).render(**template)
        elif isinstance(value, dict):
            _render_dict(env, value, template)
        elif isinstance(value, list):
            _render_list(env, value, template)


def parse_t_values(values) -> list:
    """Parse Gauduchon parameters given as a comma-separated string or
    as an iterable of numbers."""
    if isinstance(values, str):
        return [float(item) for item in values.split(',') if item.strip()]
    if isinstance(values, (int, float)):
        return [float(values)]
    return [float(item) for item in values]


def to_pairs(array) -> list:
    """Convert a complex array into nested lists of `[re, im]` pairs."""
    array = numpy.asarray(array, dtype=complex)
    if array.ndim == 0:
        return [float(array.real), float(array.imag)]
    return [to_pairs(item) for item in array]


def from_pairs(nested, shape: Iterable[int] = None) -> numpy.ndarray:
    """Inverse of :func:`to_pairs`: the last axis of size 2 holds the
    real and imaginary parts."""
    pairs = numpy.asarray(nested, dtype=float)
    if pairs.size == 0 and shape is not None:
        return numpy.zeros(tuple(shape), dtype=complex)
    if pairs.shape[-1] != 2:
        raise ValueError('Complex entries must be given as [re, im] pairs')
    array = pairs[..., 0].astype(complex)
    array.imag = pairs[..., 1]
    if shape is not None and array.shape != tuple(shape):
        raise ValueError(f'Expected shape {tuple(shape)}, got {array.shape}')
    return array
