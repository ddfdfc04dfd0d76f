"""
Structural sanity checks of the engine on one model.
"""
import numpy

from ..liegeom.connections import torsion_of
from ..liegeom.forms import exterior_derivative
from ..liegeom.geometry import ModelGeometry
from ..numlin import Jet, alternate, invariant_subspaces, max_norm
from ..report import ConditionReport
from ..split import chern_holonomy
from ..zoo import ZooEntry
from .base_check import BaseCheck


class StructuralProperties(BaseCheck):
    """Model-independent facts the engine must reproduce:

    * `chern_type`: the Chern curvature is a (1,1)-form;
    * `d_squared`: `d d alpha = 0` on random 1- and 2-forms;
    * `levi_civita_torsion_free`: the Riemannian connection has no
      torsion;
    * `holonomy_blocks`: the blocks of the Chern holonomy
      representation are invariant.

    The available options are:

    * `seed`: seed of the random forms. Default: 0.
    """

    name = 'structure'
    expected_parameters = ['seed']
    applies_to = ('lie', 'pointwise')

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.seed = int(self.options.get('seed', 0))

    def _random_form(self, rng, dim: int, degree: int) -> numpy.ndarray:
        shape = (dim,) * degree
        return alternate(rng.standard_normal(shape)
                         + 1j * rng.standard_normal(shape))

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        geometry = ModelGeometry(entry.model, self.ctx)
        model = geometry.model
        rng = numpy.random.default_rng(self.seed)
        conditions = ConditionReport(model.label, self.ctx)

        chern = geometry.curvature('chern')
        conditions.add('chern_type', numpy.concatenate(
            [chern.part('2,0').ravel(), chern.part('0,2').ravel()]))

        defects = []
        for degree in (1, 2):
            alpha = Jet.constant(self._random_form(rng, model.dim, degree),
                                 model.dim, order=2)
            d_alpha = exterior_derivative(model.structure_jet(2), alpha)
            dd_alpha = exterior_derivative(model.structure_jet(1), d_alpha)
            defects.append(max_norm(dd_alpha.value))
        conditions.add('d_squared', max(defects))

        conditions.add('levi_civita_torsion_free',
                       torsion_of(model, geometry.levi_civita).full.value)

        generators = chern_holonomy(geometry)
        blocks = invariant_subspaces(generators, geometry.n,
                                     seed=self.seed)
        defect = 0.0
        for basis in blocks:
            projector = basis @ basis.conj().T
            rest = numpy.eye(geometry.n) - projector
            for g in generators:
                defect = max(defect, max_norm(rest @ g @ projector))
        conditions.add('holonomy_blocks', defect,
                       sizes=[int(b.shape[1]) for b in blocks])

        report = self.summarize(conditions)
        report['holonomy_blocks']['sizes'] = [int(b.shape[1])
                                              for b in blocks]
        return report

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        return all(c['holds'] for c in report.values())
