"""
Condition reports: named residual checks with a pass/fail verdict.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy
import pandas

from .numlin import DEFAULT_TOLERANCE, ToleranceContext, max_norm


@dataclass
class ConditionEntry:
    """One checked condition.

    `holds` is `residual <= tol`, unless the condition is conditional and
    its hypothesis fails, in which case it holds vacuously.
    """

    name: str
    residual: float
    tol: float
    witness: Optional[Tuple[int, ...]] = None
    hypothesis: Optional[bool] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def vacuous(self) -> bool:
        return self.hypothesis is False

    @property
    def holds(self) -> bool:
        if self.vacuous:
            return True
        return bool(self.residual <= self.tol)

    def to_dict(self) -> dict:
        """Plain-Python form, ready for YAML or JSON."""
        document = asdict(self)
        document['holds'] = self.holds
        document['vacuous'] = self.vacuous
        document['witness'] = (None if self.witness is None
                               else [int(i) for i in self.witness])
        document['detail'] = to_plain(self.detail)
        return document


def to_plain(value):
    """Recursively convert numpy values into plain Python types."""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, numpy.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, (complex, numpy.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, numpy.generic):
        return value.item()
    return value


def witness_of(tensor) -> Optional[Tuple[int, ...]]:
    """Index of the largest entry of a tensor."""
    tensor = numpy.asarray(tensor)
    if tensor.size == 0:
        return None
    return tuple(int(i) for i in numpy.unravel_index(
        numpy.argmax(numpy.abs(tensor)), tensor.shape))


class ConditionReport:
    """Ordered collection of :class:`ConditionEntry`.

    Parameters
    ----------
    title : str
        What the report is about (usually the model label).
    ctx : ToleranceContext, optional
        Default tolerance of new entries.
    """

    def __init__(self, title: str = '', ctx: ToleranceContext = None):
        self.title = title
        self.ctx = ctx or DEFAULT_TOLERANCE
        self.entries: List[ConditionEntry] = []

    def add(self, name: str, tensor_or_residual, *, tol: float = None,
            hypothesis: Optional[bool] = None,
            **detail) -> ConditionEntry:
        """Record a condition from a residual tensor or a scalar."""
        if numpy.ndim(tensor_or_residual) == 0:
            residual, witness = float(abs(tensor_or_residual)), None
        else:
            residual = max_norm(tensor_or_residual)
            witness = witness_of(tensor_or_residual)
        entry = ConditionEntry(name, residual,
                               self.ctx.abs_tol if tol is None else tol,
                               witness, hypothesis, detail)
        self.entries.append(entry)
        return entry

    def extend(self, other: 'ConditionReport', prefix: str = ''):
        """Append the entries of another report."""
        for entry in other.entries:
            if prefix:
                entry = ConditionEntry(f'{prefix}{entry.name}',
                                       entry.residual, entry.tol,
                                       entry.witness, entry.hypothesis,
                                       entry.detail)
            self.entries.append(entry)

    def __iter__(self) -> Iterator[ConditionEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return any(entry.name == name for entry in self.entries)

    def __getitem__(self, name: str) -> ConditionEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def holds(self, name: str) -> bool:
        """Verdict of the entry called `name`."""
        return self[name].holds

    @property
    def all_hold(self) -> bool:
        return all(entry.holds for entry in self.entries)

    def failures(self) -> List[ConditionEntry]:
        return [entry for entry in self.entries if not entry.holds]

    def to_dict(self) -> dict:
        """Plain-Python form, ready for YAML or JSON."""
        return {'title': self.title,
                'entries': [entry.to_dict() for entry in self.entries]}

    def to_frame(self) -> pandas.DataFrame:
        """Table with one row per condition."""
        return pandas.DataFrame(
            [{'condition': entry.name,
              'holds': entry.holds,
              'residual': entry.residual,
              'tol': entry.tol,
              'vacuous': entry.vacuous}
             for entry in self.entries],
            columns=['condition', 'holds', 'residual', 'tol', 'vacuous'],
        )


def worst_residual(detail) -> float:
    """Largest residual found anywhere in a check report, leaving out
    conditions that hold vacuously."""
    worst = 0.0
    if isinstance(detail, dict):
        if detail.get('vacuous') is True:
            return worst
        for key, value in detail.items():
            if key in ('residual', 'worst_residual', 'relative_residual'):
                for number in (value.values() if isinstance(value, dict)
                               else [value]):
                    if isinstance(number, (int, float)) and not (
                            isinstance(number, bool) or math.isnan(number)):
                        worst = max(worst, float(number))
            else:
                worst = max(worst, worst_residual(value))
    elif isinstance(detail, list):
        for value in detail:
            worst = max(worst, worst_residual(value))
    return worst
