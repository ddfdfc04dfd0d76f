"""
Check of the torsion splitting and symplectic decomposition.
"""
from ..split import decompose
from ..zoo import ZooEntry
from .base_check import BaseCheck


class Decomposition(BaseCheck):
    """Run the torsion splitting `W + N` of a model and, on models with
    abelian Chern holonomy, the parallel 2-forms and the pairing blocks
    of `N`. Every step residual must vanish.

    The available options are:

    * `W_dim`, `N_dim`, `blocks`: expected dimensions and number of
      pairing blocks. Unset values are not compared.
    * `seed`: seed of the random combinations of parallel forms.
      Default: 0.
    """

    name = 'split'
    expected_parameters = ['W_dim', 'N_dim', 'blocks', 'seed']
    applies_to = ('lie', 'pointwise')

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.expected_dims = {
            key: self.options[key] for key in ('W_dim', 'N_dim', 'blocks')
            if self.options.get(key) is not None
        }
        self.seed = int(self.options.get('seed', 0))

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        decomposition = decompose(entry.model, self.ctx, self.seed)
        return {
            'W_dim': decomposition.ell1,
            'N_dim': decomposition.N_basis.shape[1],
            'blocks': decomposition.ell3,
            'cas': decomposition.cas,
            'checks': self.summarize(decomposition.checks),
        }

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        if not all(c['holds'] for c in report['checks'].values()):
            return False
        return all(report[key] == value
                   for key, value in self.expected_dims.items())
