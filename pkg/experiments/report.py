"""Report rows and the report record every experiment returns."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from field import DomainError

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]

RELATIONS = ("<=", ">=", "<", ">", "==")


def _compare(value: float, relation: str, bound: float, slack: float) -> bool:
    if relation == "<=":
        return value <= bound + slack
    if relation == ">=":
        return value >= bound - slack
    if relation == "<":
        return value < bound + slack
    if relation == ">":
        return value > bound - slack
    return abs(value - bound) <= slack


@dataclass(frozen=True)
class ReportRow:
    """One measured quantity with the bound it is judged against.

    `passed` is derived from value, relation, bound and slack, so the flag
    always agrees with the numbers it sits next to. Exact rationals are compared
    exactly.
    """

    N: int
    metric: str
    value: float
    bound: float
    relation: str = "<="
    err: float = 0.0
    slack: float = 0.0
    exact: Optional[Fraction] = None
    exact_bound: Optional[Fraction] = None

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise DomainError(f"relation must be one of {RELATIONS}, got {self.relation!r}")

    @classmethod
    def measure(cls, N: int, metric: str, value: Number, relation: str, bound: Number,
                err: float = 0.0, slack: float = 0.0) -> "ReportRow":
        exact = value if isinstance(value, Fraction) else None
        exact_bound = bound if isinstance(bound, Fraction) else None
        return cls(int(N), metric, float(value), float(bound), relation, float(err),
                   float(slack), exact, exact_bound)

    @classmethod
    def check(cls, N: int, metric: str, ok: bool) -> "ReportRow":
        """A yes/no assertion: value 1 means it held."""
        return cls(int(N), metric, 1.0 if ok else 0.0, 1.0, "==")

    @property
    def passed(self) -> bool:
        if self.exact is not None and self.exact_bound is not None and self.slack == 0:
            return _compare(self.exact, self.relation, self.exact_bound, 0)
        return _compare(self.value, self.relation, self.bound, self.slack)

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "N": self.N,
            "metric": self.metric,
            "value": self.value,
            "err": self.err,
            "bound": self.bound,
            "pass": self.passed,
        }
        if self.exact is not None:
            out["exact"] = f"{self.exact.numerator}/{self.exact.denominator}"
        return out


@dataclass
class ExperimentReport:
    experiment: str
    params: Dict[str, Any]
    seed: int
    rows: List[ReportRow] = field(default_factory=list)
    wall_clock: float = 0.0
    timestamp: Optional[str] = None

    def add(self, row: ReportRow) -> ReportRow:
        self.rows.append(row)
        return row

    def extend(self, rows) -> None:
        self.rows.extend(rows)

    @property
    def failures(self) -> List[ReportRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def row(self, metric: str, N: Optional[int] = None) -> ReportRow:
        for r in self.rows:
            if r.metric == metric and (N is None or r.N == N):
                return r
        raise KeyError(f"no row {metric!r} at N={N}")

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        out = {
            "experiment": self.experiment,
            "params": self.params,
            "seed": self.seed,
            "rows": [r.to_dict() for r in self.rows],
        }
        if include_timing:
            out["wall_clock"] = self.wall_clock
        if self.timestamp:
            out["timestamp"] = self.timestamp
        return out
