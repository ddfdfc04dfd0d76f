"""
Check of holonomy systems and of the systems induced by Ambrose-Singer
connections.
"""
import logging

from ..exceptions import HermlabError
from ..holsys import HolonomySystem, certificate_hypotheses, from_model
from ..report import worst_residual
from ..zoo import SystemFact, ZooEntry, system_facts
from .base_check import BaseCheck

logger = logging.getLogger(__name__)

DEFAULT_FACTS = {'valid': True, 'jacobi': True, 'killing': True,
                 'no_contradiction': True}


def _fact_record(fact: SystemFact) -> dict:
    record = {'holds': bool(fact.holds)}
    if fact.residual is not None:
        record['residual'] = fact.residual
    if fact.value is not None:
        record['value'] = fact.value
    return record


class Holonomy(BaseCheck):
    """Validate a holonomy system and run its certificates: Nomizu
    algebra Jacobi identity, Killing form identities, Schur constant,
    Kostant reconstruction and the Ricci-flat implies flat certificate.

    Hermitian models are turned into the holonomy system of one of
    their connections first, which requires the connection to be
    Ambrose-Singer.

    The available options are:

    * `expect`: mapping from fact name (`valid`, `jacobi`, `killing`,
      `irreducible`, `lambda_nonzero`, `schur`, `kostant`,
      `certificate`, `no_contradiction`, `flat`) to the expected
      boolean. Default: valid, jacobi, killing and no_contradiction
      are True.
    * `connection`: connection of Hermitian models. Default: chern.
    * `t`: Gauduchon parameter when `connection` is `gauduchon`.
    """

    name = 'holonomy'
    expected_parameters = ['expect', 'connection', 't']

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        expect = self.options.get('expect')
        self.expect = dict(DEFAULT_FACTS if expect is None else expect)
        self.connection = self.options.get('connection', 'chern')
        self.t = self.options.get('t')

    def _system(self, entry: ZooEntry) -> HolonomySystem:
        if isinstance(entry.model, HolonomySystem):
            return entry.model
        return from_model(entry.model, self.connection, t=self.t,
                          ctx=self.ctx)

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        try:
            system = self._system(entry)
        except HermlabError as e:
            logger.info('No holonomy system for %r: %s', entry.name, e)
            return {'system': None, 'reason': str(e)}
        facts = system_facts(system, self.ctx)
        report = {
            'system': {'dim': system.dim,
                       'generalized': system.is_generalized,
                       'holonomy_dim': len(system.g_basis)},
            'facts': {name.partition('.')[2]: _fact_record(fact)
                      for name, fact in facts.items()},
        }
        if system.is_generalized:
            report['hypotheses'] = {
                hypothesis.name: hypothesis.holds
                for hypothesis in certificate_hypotheses(system, self.ctx)
            }
        return report

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        if report['system'] is None:
            return False
        facts = report['facts']
        return all(name in facts and facts[name]['holds'] == bool(value)
                   for name, value in self.expect.items())

    # docstr-coverage:inherited
    def worst_residual(self, report: dict) -> float:
        if report['system'] is None:
            return 0.0
        facts = report['facts']
        return worst_residual({name: facts[name]
                               for name, value in self.expect.items()
                               if value and name in facts})
