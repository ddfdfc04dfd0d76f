"""
Hermitian geometry of Lie and pointwise frame models: connections,
torsion, curvature, Ricci contractions, predicates and identities.
"""

from .connections import (HermitianConnection, TorsionTensor,
                          bismut_connection, chern_connection,
                          connection_by_tag, gauduchon_connection,
                          levi_civita)
from .curvature import (CurvatureTensor, RicciSet, covariant_derivative,
                        curvature, ricci)
from .forms import ce_differential, kahler_form
from .frames import AdmissibleFrame, admissible_frame
from .geometry import ModelGeometry
from .identities import check_curvature_identities
from .models import (HermitianModel, LieHermitianModel, PointwiseFrameModel,
                     apply_frame_change, direct_sum, from_real_algebra)
from .predicates import predicates
from .torsion import TorsionDerived, torsion_derived

__all__ = (
    'AdmissibleFrame',
    'CurvatureTensor',
    'HermitianConnection',
    'HermitianModel',
    'LieHermitianModel',
    'ModelGeometry',
    'PointwiseFrameModel',
    'RicciSet',
    'TorsionDerived',
    'TorsionTensor',
    'admissible_frame',
    'apply_frame_change',
    'bismut_connection',
    'ce_differential',
    'chern_connection',
    'check_curvature_identities',
    'connection_by_tag',
    'covariant_derivative',
    'curvature',
    'direct_sum',
    'from_real_algebra',
    'gauduchon_connection',
    'kahler_form',
    'levi_civita',
    'predicates',
    'ricci',
    'torsion_derived',
)
