import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Literal, Tuple, Union

import pandas as pd

from sepvol.sampling import SeededStream
from sepvol.utils import CheckRecord
from sepvol.widths import FractionEstimate, WidthEstimate

logger = logging.getLogger(__name__)

Kind = Literal["at_most", "at_least", "close_to"]
Quantity = Union[float, WidthEstimate, FractionEstimate, Tuple[float, float]]

N_SIGMA = 3.0


def _interval(x: Quantity) -> Tuple[float, float]:
    """Credible range of a quantity: 3σ for widths, the Wilson interval for fractions."""
    if isinstance(x, WidthEstimate):
        return x.lower(N_SIGMA), x.upper(N_SIGMA)
    if isinstance(x, FractionEstimate):
        return x.ci_low, x.ci_high
    if isinstance(x, tuple):
        return float(x[0]), float(x[1])
    return float(x), float(x)


def _point(x: Quantity) -> float:
    if isinstance(x, WidthEstimate):
        return x.mean
    if isinstance(x, FractionEstimate):
        return x.fraction
    if isinstance(x, tuple):
        return (float(x[0]) + float(x[1])) / 2
    return float(x)


def _is_lower_bound(x: Quantity) -> bool:
    return isinstance(x, WidthEstimate) and x.is_lower_bound


@dataclass
class TheoremReport:
    """
    Outcome of one theorem harness.

    Parameters
    ----------
    theorem
        Theorem number, 1 to 4.
    inputs
        Parameter grid point and sample sizes.
    estimates
        Monte Carlo estimates.
    bounds
        Analytic bounds and reference values.
    checks
        One :class:`~sepvol.utils.CheckRecord` per comparison.
    passed
        Whether every check holds.
    seed
        Seed of the root stream.
    wall_time
        Seconds spent assembling the report.
    retries
        Names of Monte Carlo checks rerun with four times the samples.
    """

    theorem: int
    inputs: Dict[str, Any]
    estimates: Dict[str, Any]
    bounds: Dict[str, Any]
    checks: Dict[str, CheckRecord]
    passed: bool
    seed: int
    wall_time: float
    retries: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        """JSON-ready dictionary with keys ``inputs``, ``estimates``, ``bounds``, ``checks``, ``pass``, ``seed``."""
        return CheckRecord(
            theorem=self.theorem,
            inputs=self.inputs,
            estimates=self.estimates,
            bounds=self.bounds,
            checks=self.checks,
            retries=self.retries,
            seed=self.seed,
            wall_time=self.wall_time,
            **{"pass": self.passed},
        ).to_builtin()

    def to_frame(self) -> pd.DataFrame:
        """One row per check, with the inputs repeated as columns."""
        rows = []
        for name, check in self.checks.items():
            row = {"theorem": self.theorem, **self.inputs, "check": name}
            row.update(
                {
                    k: check.get(k)
                    for k in ("kind", "lhs", "rhs", "slack", "retried", "passed")
                }
            )
            rows.append(row)
        return pd.DataFrame(rows)


class ReportBuilder:
    """
    Assembles a :class:`TheoremReport` from one-sided comparisons.

    Monte Carlo quantities enter through their credible ranges, so a check
    fails only on a credible violation. Two-sided comparisons of lower-bound
    estimates are rejected.

    Parameters
    ----------
    theorem
        Theorem number.
    inputs
        Parameters of the run.
    seed
        Seed of the root stream.
    """

    def __init__(self, theorem: int, inputs: Dict[str, Any], seed: int):
        self.theorem = theorem
        self.inputs = dict(inputs)
        self.seed = seed
        self.estimates: Dict[str, Any] = {}
        self.bounds: Dict[str, Any] = {}
        self.checks: Dict[str, CheckRecord] = {}
        self.retries: List[str] = []
        self._start = time.perf_counter()

    def estimate(self, name: str, value):
        self.estimates[name] = value

    def bound(self, name: str, value):
        self.bounds[name] = value

    def _add(self, name, kind, lhs, rhs, slack, passed, retried=False) -> bool:
        if name in self.checks:
            raise ValueError(f"Check {name!r} is already part of the report.")
        self.checks[name] = CheckRecord(
            kind=kind,
            lhs=_point(lhs),
            rhs=_point(rhs),
            slack=float(slack),
            retried=retried,
            passed=bool(passed),
        )
        if not passed:
            logger.warning(f"Theorem {self.theorem}: check {name} failed ({_point(lhs):.6g} {kind} {_point(rhs):.6g}).")
        return bool(passed)

    @staticmethod
    def _compare(kind: Kind, lhs: Quantity, rhs: Quantity, slack: float) -> bool:
        lo_l, hi_l = _interval(lhs)
        lo_r, hi_r = _interval(rhs)
        if kind == "at_most":
            return lo_l <= hi_r + slack
        if kind == "at_least":
            return hi_l >= lo_r - slack
        if _is_lower_bound(lhs) or _is_lower_bound(rhs):
            raise TypeError("A lower-bound estimate cannot enter a two-sided comparison.")
        return lo_l - slack <= hi_r and lo_r - slack <= hi_l

    def at_most(self, name: str, lhs: Quantity, rhs: Quantity, slack: float = 0.0) -> bool:
        """``lhs ≤ rhs + slack`` unless the credible ranges rule it out."""
        return self._add(name, "at_most", lhs, rhs, slack, self._compare("at_most", lhs, rhs, slack))

    def at_least(self, name: str, lhs: Quantity, rhs: Quantity, slack: float = 0.0) -> bool:
        """``lhs ≥ rhs − slack`` unless the credible ranges rule it out."""
        return self._add(name, "at_least", lhs, rhs, slack, self._compare("at_least", lhs, rhs, slack))

    def close_to(self, name: str, lhs: Quantity, rhs: Quantity, tol: float = 0.0) -> bool:
        """
        Two-sided agreement within ``tol``.

        Raises
        ------
        TypeError
            If either side is a lower-bound estimate.
        """
        return self._add(name, "close_to", lhs, rhs, tol, self._compare("close_to", lhs, rhs, tol))

    def record(self, name: str, check: CheckRecord):
        """Include a precomputed check record; it must carry ``passed``."""
        if "passed" not in check:
            raise ValueError(f"Check {name!r} has no verdict.")
        if name in self.checks:
            raise ValueError(f"Check {name!r} is already part of the report.")
        rec = CheckRecord(check)
        rec.setdefault("kind", "record")
        rec.setdefault("retried", False)
        self.checks[name] = rec
        if not rec.passed:
            logger.warning(f"Theorem {self.theorem}: check {name} failed.")

    def monte_carlo(
        self,
        name: str,
        kind: Kind,
        estimate_fn: Callable[[int, SeededStream], Quantity],
        rhs: Quantity,
        samples: int,
        stream: SeededStream,
        slack: float = 0.0,
    ):
        """
        Run a Monte Carlo comparison, retrying once with ``4 × samples`` on failure.

        The first attempt draws from ``stream.child(0)``, the retry from
        ``stream.child(1)``. Returns the estimate that was kept.
        """
        value = estimate_fn(samples, stream.child(0))
        passed = self._compare(kind, value, rhs, slack)
        retried = False
        if not passed:
            logger.info(f"Theorem {self.theorem}: retrying {name} with {4 * samples} samples.")
            value = estimate_fn(4 * samples, stream.child(1))
            passed = self._compare(kind, value, rhs, slack)
            retried = True
            self.retries.append(name)
        self.estimates[name] = value
        self._add(name, kind, value, rhs, slack, passed, retried)
        return value

    def build(self) -> TheoremReport:
        passed = all(c.passed for c in self.checks.values())
        report = TheoremReport(
            theorem=self.theorem,
            inputs=self.inputs,
            estimates=self.estimates,
            bounds=self.bounds,
            checks=self.checks,
            passed=passed,
            seed=self.seed,
            wall_time=time.perf_counter() - self._start,
            retries=self.retries,
        )
        logger.info(f"Theorem {self.theorem} {self.inputs}: {'pass' if passed else 'FAIL'}.")
        return report
