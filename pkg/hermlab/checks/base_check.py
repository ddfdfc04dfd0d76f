"""
The base check that all other checks inherit from.
"""
import logging
from abc import ABC, abstractmethod
from typing import Optional

from ..numlin import DEFAULT_TOLERANCE, ToleranceContext
from ..report import worst_residual
from ..zoo import ZooEntry

logger = logging.getLogger(__name__)


class BaseCheck(ABC):
    """Base abstract check class for all Hermlab checks.

    A check receives a zoo entry (models read from files are wrapped in
    an entry without expectations) and produces a report of residuals
    and a verdict.

    Attributes
    ----------
    options : dict
        Check parameters provided by user.
    ctx : ToleranceContext
        Tolerances; the `tol` option overrides `abs_tol`.
    """

    name = 'base_check'
    """str: Check name when referred in check documents
    (only valid for Hermlab built-in checks)."""
    expected_parameters = ['type', 'severity', 'location', 'tol']
    """List[str]: Parameters expected for this check."""
    applies_to = ('lie', 'pointwise', 'holonomy-system')
    """Tuple[str]: Entry kinds the check can evaluate; other entries are
    reported as skipped and pass."""

    def __init__(self, options: dict,
                 ctx: Optional[ToleranceContext] = None) -> None:
        self._validate_options(options)
        self.options = options
        ctx = ctx or DEFAULT_TOLERANCE
        if options.get('tol') is not None:
            ctx = ctx.replace(abs_tol=float(options['tol']))
        self.ctx = ctx

    def _validate_options(self, options: dict) -> None:
        """Make sure all provided check parameters are expected by
        check classes"""
        cls = type(self)
        unexpected_parameters = [
            option for option in options
            if option not in (cls.expected_parameters +
                              BaseCheck.expected_parameters)
        ]
        if unexpected_parameters:
            raise ValueError(
                f'Invalid parameters passed to {cls.__name__} check: '
                f'{unexpected_parameters}\n'
                f'The valid parameters are: {cls.expected_parameters}'
            )

    def __call__(self, entry: ZooEntry) -> dict:
        """Run check instance."""
        if entry.kind not in self.applies_to:
            logger.debug('Check %r skipped on %s entry %r', self.name,
                         entry.kind, entry.name)
            return {
                'detail': {'skipped': f'not applicable to {entry.kind}'},
                'result': True,
                'worst_residual': 0.0
            }
        internal_report = self.report(entry)
        result = self.result(internal_report)

        final_report = {
            'detail': internal_report,
            'result': result,
            'worst_residual': self.worst_residual(internal_report)
        }
        return final_report

    @abstractmethod
    def report(self, entry: ZooEntry) -> dict:
        """Receive a zoo entry and return a report of residuals and
        verdicts that can be used later to declare this check as
        fulfilled or failed.

        Parameters
        ----------
        entry : ZooEntry
            The model (or holonomy system) under check.

        Returns
        -------
        dict
            Plain-Python residuals, ready for YAML or JSON.
        """

    @abstractmethod
    def result(self, report: dict) -> bool:
        """Receive the report previously generated and declare this
        check as either fulfilled (True) or failed (False).

        Parameters
        ----------
        report : dict
            Report generated by `report` method.

        Returns
        -------
        bool
            Whether or not this check passed.
        """

    def worst_residual(self, report: dict) -> float:
        """Largest residual among the conditions the verdict depends on.
        By default every residual of the report counts, except those of
        conditions holding vacuously."""
        return worst_residual(report)

    @staticmethod
    def summarize(condition_report) -> dict:
        """Compact form of a :class:`~hermlab.report.ConditionReport`:
        one `{holds, residual, vacuous}` record per entry."""
        return {
            entry.name: {'holds': entry.holds,
                         'residual': entry.residual,
                         'vacuous': entry.vacuous}
            for entry in condition_report
        }
