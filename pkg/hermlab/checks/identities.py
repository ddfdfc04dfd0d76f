"""
Check of the curvature identities along the Gauduchon line.
"""
from ..liegeom.geometry import ModelGeometry
from ..liegeom.identities import check_curvature_identities
from ..report import worst_residual
from ..utils import parse_t_values
from ..zoo import ZooEntry
from .base_check import BaseCheck


class Identities(BaseCheck):
    """Check that every curvature identity holds on a model, for each
    requested Gauduchon parameter. Conditional identities whose
    hypothesis fails pass vacuously and are reported as such.

    The available options are:

    * `t_values`: Gauduchon parameters. Default: -1, 1, 2, 3.
    * `only`: restrict the verdict to these identity names.

    Examples
    --------
    .. code-block:: yaml

        - type: identities
          t_values: -1,1,2,3
          tol: 1.0e-8
    """

    name = 'identities'
    expected_parameters = ['t_values', 'only']
    applies_to = ('lie', 'pointwise')

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.t_values = parse_t_values(
            self.options.get('t_values', [-1.0, 1.0, 2.0, 3.0]))
        self.only = self.options.get('only')

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        geometry = ModelGeometry(entry.model, self.ctx)
        report = {}
        for t in self.t_values:
            conditions = check_curvature_identities(geometry, t, self.ctx)
            report[f't={t:g}'] = self.summarize(conditions)
        return report

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        for conditions in report.values():
            for name, entry in conditions.items():
                if self.only and name not in self.only:
                    continue
                if not entry['holds']:
                    return False
        return True

    # docstr-coverage:inherited
    def worst_residual(self, report: dict) -> float:
        if not self.only:
            return super().worst_residual(report)
        return worst_residual([
            {name: entry for name, entry in conditions.items()
             if name in self.only}
            for conditions in report.values()
        ])
