"""
Module for BaseCheck and builtin Hermlab checks.
"""

import inspect

from .base_check import BaseCheck
from .covariance import FrameCovariance  # noqa F401
from .expectations import Expectations  # noqa F401
from .frames import AdmissibleFrameCheck  # noqa F401
from .holonomy import Holonomy  # noqa F401
from .identities import Identities  # noqa F401
from .predicate import Predicate  # noqa F401
from .reference import ClosedForm  # noqa F401
from .split import Decomposition  # noqa F401
from .structure import StructuralProperties  # noqa F401

CHECKS_MAP = {
    cls.name: cls
    for _, cls in locals().items()
    if inspect.isclass(cls) and issubclass(cls, BaseCheck)
}

__all__ = tuple(
    cls.__name__ for cls in CHECKS_MAP.values()
)
