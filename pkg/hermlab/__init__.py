"""
Gather main Hermlab methods to be easily accessible `from hermlab`.
"""

from .liegeom import (ModelGeometry, check_curvature_identities,
                      predicates)
from .numlin import ToleranceContext
from .parser import dump_model, model_reader
from .split import decompose
from .validator import validate
from .zoo import verify_entry, zoo_entry

__all__ = (
    'ModelGeometry',
    'ToleranceContext',
    'check_curvature_identities',
    'decompose',
    'dump_model',
    'model_reader',
    'predicates',
    'validate',
    'verify_entry',
    'zoo_entry',
)
