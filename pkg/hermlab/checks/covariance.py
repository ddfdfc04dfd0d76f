"""
Check that frame-independent quantities do not change under random
unitary frame changes.
"""
from typing import Dict

import numpy

from ..liegeom.geometry import ModelGeometry
from ..liegeom.models import apply_frame_change
from ..liegeom.predicates import predicates
from ..numlin import FrameChange
from ..zoo import ZooEntry
from .base_check import BaseCheck


def invariants(geometry: ModelGeometry) -> Dict[str, float]:
    """Scalars that only depend on the Hermitian structure."""
    derived = geometry.derived
    values = {
        'torsion_norm_sq': derived.torsion_norm_sq,
        'eta_norm': derived.eta_norm,
        'b_eigenvalues': numpy.linalg.eigvalsh(derived.B),
    }
    for tag in ('chern', 'bismut', 'levi_civita'):
        values[f'{tag}_curvature_norm'] = numpy.linalg.norm(
            geometry.curvature(tag).value)
    for tag in ('chern', 'bismut'):
        ricci = geometry.ricci(tag)
        values[f'{tag}_s1'] = ricci.s1
        values[f'{tag}_s3'] = ricci.s3
    return values


class FrameCovariance(BaseCheck):
    """Re-express a Lie model in random unitary frames and compare
    scalar invariants and predicate verdicts with the original frame.

    The available options are:

    * `trials`: number of random frames. Default: 100.
    * `seed`: seed of the random frames. Default: 0.
    """

    name = 'covariance'
    expected_parameters = ['trials', 'seed']
    applies_to = ('lie',)

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.trials = int(self.options.get('trials', 100))
        self.seed = int(self.options.get('seed', 0))

    def _verdicts(self, geometry: ModelGeometry) -> Dict[str, bool]:
        return {entry.name: entry.holds
                for entry in predicates(geometry, self.ctx, t_values=())}

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        model = entry.model
        rng = numpy.random.default_rng(self.seed)
        base = ModelGeometry(model, self.ctx)
        reference = invariants(base)
        verdicts = self._verdicts(base)
        scale = max([1.0] + [float(numpy.max(numpy.abs(v)))
                             for v in reference.values()])

        worst = 0.0
        flipped = set()
        for _ in range(self.trials):
            change = FrameChange.random_unitary(model.n, rng)
            moved = ModelGeometry(apply_frame_change(model, change),
                                  self.ctx)
            for key, value in invariants(moved).items():
                worst = max(worst, float(numpy.max(
                    numpy.abs(numpy.asarray(value) - reference[key]))))
            flipped.update(name for name, holds in self._verdicts(moved)
                           .items() if holds != verdicts[name])
        return {'trials': self.trials,
                'worst_residual': worst,
                'relative_residual': worst / scale,
                'flipped_predicates': sorted(flipped)}

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        return (report['relative_residual'] <= self.ctx.abs_tol * 10
                and not report['flipped_predicates'])

    # docstr-coverage:inherited
    def worst_residual(self, report: dict) -> float:
        return report['relative_residual']
