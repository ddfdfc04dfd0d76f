"""
Check of pointwise models against their closed-form evaluators.
"""
import numpy

from ..liegeom.geometry import ModelGeometry
from ..liegeom.predicates import predicates
from ..zoo import (ZooEntry, finite_difference_residuals,
                   reference_residuals)
from .base_check import BaseCheck


class ClosedForm(BaseCheck):
    """Compare a pointwise model with its closed-form evaluators
    (torsion, connection coefficients, Bismut curvature and its
    derivative, Ricci and Lee forms) at the base point and at random
    points, together with central differences of the Bismut curvature
    and a set of predicates that must hold everywhere.

    The available options are:

    * `points`: number of random points besides the base point.
      Default: 20.
    * `seed`: seed of the random points. Default: 0.
    * `predicates`: predicate names required to hold at every point.
      Default: `btp`, `AS(t=2)`.
    * `finite_differences`: also compare with central differences,
      within `fd_tol`. Default: True.
    """

    name = 'reference'
    expected_parameters = ['points', 'seed', 'predicates',
                           'finite_differences']
    applies_to = ('pointwise',)

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.points = int(self.options.get('points', 20))
        self.seed = int(self.options.get('seed', 0))
        self.required = list(self.options.get('predicates',
                                              ['btp', 'AS(t=2)']))
        self.finite_differences = bool(
            self.options.get('finite_differences', True))

    def _points(self, model):
        rng = numpy.random.default_rng(self.seed)
        yield model.point
        for _ in range(self.points):
            yield (rng.standard_normal(model.n)
                   + 1j * rng.standard_normal(model.n))

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        worst = {}
        failures = []
        t_values = [float(name[len('AS(t='):-1]) for name in self.required
                    if name.startswith('AS(t=')]
        for index, point in enumerate(self._points(entry.model)):
            geometry = ModelGeometry(entry.model.at(point), self.ctx)
            reports = [reference_residuals(geometry),
                       predicates(geometry, self.ctx, t_values)]
            if self.finite_differences:
                reports.append(finite_difference_residuals(geometry))
            for source, conditions in zip(('reference', 'predicates', 'fd'),
                                          reports):
                for condition in conditions:
                    if (source == 'predicates'
                            and condition.name not in self.required):
                        continue
                    key = f'{source}.{condition.name}'
                    worst[key] = max(worst.get(key, 0.0),
                                     condition.residual)
                    if not condition.holds:
                        failures.append({'point': index, 'check': key,
                                         'residual': condition.residual})
        return {'points': self.points + 1, 'worst_residual': worst,
                'failures': failures}

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        return not report['failures']
