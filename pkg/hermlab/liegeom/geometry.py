"""
Lazy bundle of every connection-level object of one model.
"""

import logging
from functools import cached_property
from typing import Dict, Tuple

import numpy

from ..enums import ConnectionTag
from ..numlin import (DEFAULT_TOLERANCE, Jet, ToleranceContext,
                      conjugate_index)
from .connections import (HermitianConnection, TorsionTensor,
                          chern_connection, gauduchon_connection,
                          levi_civita, torsion_of)
from .curvature import (CurvatureTensor, RicciSet, covariant_derivative,
                        curvature, ricci)
from .models import HermitianModel
from .torsion import TorsionDerived, torsion_derived

logger = logging.getLogger(__name__)


class ModelGeometry:
    """Connections, torsion, curvature and Ricci tensors of a model,
    computed on first use and kept.

    Parameters
    ----------
    model : HermitianModel
        Lie or pointwise model.
    ctx : ToleranceContext, optional
        Tolerances used by the checks built on top of this object.
    """

    def __init__(self, model: HermitianModel, ctx: ToleranceContext = None):
        self.model = model
        self.ctx = ctx or DEFAULT_TOLERANCE
        self._gauduchon: Dict[float, HermitianConnection] = {}
        self._curvatures: Dict[Tuple[str, float], CurvatureTensor] = {}

    @property
    def n(self) -> int:
        return self.model.n

    @cached_property
    def _chern(self) -> Tuple[HermitianConnection, TorsionTensor]:
        logger.debug('Solving the Chern connection of %r', self.model.label)
        return chern_connection(self.model)

    @property
    def chern(self) -> HermitianConnection:
        return self._chern[0]

    @property
    def torsion(self) -> TorsionTensor:
        """Chern torsion."""
        return self._chern[1]

    @cached_property
    def derived(self) -> TorsionDerived:
        return torsion_derived(self.torsion)

    def gauduchon(self, t: float) -> HermitianConnection:
        t = float(t)
        if t == 0:
            return self.chern
        if t not in self._gauduchon:
            self._gauduchon[t] = gauduchon_connection(self.model, t,
                                                      self._chern)
        return self._gauduchon[t]

    @property
    def bismut(self) -> HermitianConnection:
        return self.gauduchon(2.0)

    @cached_property
    def bismut_torsion(self) -> TorsionTensor:
        return torsion_of(self.model, self.bismut)

    @cached_property
    def levi_civita(self) -> HermitianConnection:
        return levi_civita(self.model)

    def connection(self, tag, t: float = None) -> HermitianConnection:
        """Connection by tag; `gauduchon` needs `t`."""
        tag = ConnectionTag(tag)
        if tag == ConnectionTag.CHERN:
            return self.chern
        if tag == ConnectionTag.BISMUT:
            return self.bismut
        if tag == ConnectionTag.LEVI_CIVITA:
            return self.levi_civita
        return self.gauduchon(t)

    def curvature(self, tag, t: float = None) -> CurvatureTensor:
        tag = ConnectionTag(tag)
        connection = self.connection(tag, t)
        key = (connection.tag.value, connection.t)
        if key not in self._curvatures:
            self._curvatures[key] = curvature(self.model, connection)
        return self._curvatures[key]

    def ricci(self, tag, t: float = None) -> RicciSet:
        return ricci(self.model, self.curvature(tag, t))

    def nabla_torsion(self, t: float) -> numpy.ndarray:
        """`nabla^(t) T` of the Chern torsion, indexed `[s, a, b, d]`."""
        return covariant_derivative(self.model, self.gauduchon(t),
                                    self.torsion).value

    def nabla_curvature(self, t: float) -> numpy.ndarray:
        """`nabla^(t) R^(t)`, indexed `[s, a, b, d, h]`."""
        tag = ConnectionTag.CHERN if float(t) == 0 else ConnectionTag.GAUDUCHON
        return covariant_derivative(self.model, self.gauduchon(t),
                                    self.curvature(tag, t)).value

    def lowered(self, jet: Jet) -> Jet:
        """Lower the last (vector) slot with the metric."""
        bar = conjugate_index(self.model.dim)
        return jet.map(lambda p: p[..., bar])
