"""
Check to compare the condition predicates of a model with expected
verdicts.
"""
from ..liegeom.predicates import DEFAULT_T_VALUES, predicates
from ..report import worst_residual
from ..utils import parse_t_values
from ..zoo import ZooEntry
from .base_check import BaseCheck


class Predicate(BaseCheck):
    """Evaluate the condition predicates (Kähler, balanced, BTP,
    Ambrose-Singer along the Gauduchon line, Vaisman, ...) of a model
    and compare them with expected verdicts.

    The available options are:

    * `expect`: mapping from predicate name to the expected boolean.
      Without it the check only logs the residuals and passes.
    * `t_values`: Gauduchon parameters of the `AS(t=...)` entries, as a
      list or a comma-separated string. Default: -1, 0, 0.5, 1, 2, 3.

    Examples
    --------
    The Hopf manifold of dimension 3 has parallel Bismut torsion and
    curvature, is Vaisman and is not Bismut flat:

    .. code-block:: yaml

        model: zoo:hopf3
        checks:
        - type: predicates
          t_values: [2]
          expect:
            btp: true
            AS(t=2): true
            vaisman: true
            bismut_flat: false
    """

    name = 'predicates'
    expected_parameters = ['expect', 't_values']
    applies_to = ('lie', 'pointwise')

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.expect = dict(self.options.get('expect') or {})
        self.t_values = parse_t_values(
            self.options.get('t_values', DEFAULT_T_VALUES))

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        conditions = predicates(entry.model, self.ctx, self.t_values)
        report = self.summarize(conditions)
        missing = sorted(set(self.expect) - set(report))
        if missing:
            raise KeyError(f'Unknown predicates: {missing}')
        return report

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        return all(report[name]['holds'] == bool(value)
                   for name, value in self.expect.items())

    # docstr-coverage:inherited
    def worst_residual(self, report: dict) -> float:
        asserted = {name: report[name]
                    for name, value in self.expect.items() if value}
        return worst_residual(asserted)
