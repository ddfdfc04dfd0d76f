"""
Check that a zoo entry has every property it is known to have.
"""
from ..zoo import ZooEntry, verify_entry
from .base_check import BaseCheck


class Expectations(BaseCheck):
    """Evaluate the expectations attached to a zoo entry. Entries read
    from model files carry no expectations and pass trivially.

    The available options are:

    * `t`: Gauduchon parameter of the identity facts. Default: 1.
    * `provenance`: only evaluate expectations with these provenance
      tags (`LITERATURE`, `DERIVED`, `TRIVIAL`).
    """

    name = 'expectations'
    expected_parameters = ['t', 'provenance']

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.t = float(self.options.get('t', 1.0))
        self.provenance = self.options.get('provenance')

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        if self.provenance:
            entry = ZooEntry(entry.name, entry.model,
                             [e for e in entry.expected
                              if e.provenance in self.provenance],
                             entry.family, entry.params)
        conditions = verify_entry(entry, self.ctx, self.t)
        return self.summarize(conditions)

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        return all(c['holds'] for c in report.values())
