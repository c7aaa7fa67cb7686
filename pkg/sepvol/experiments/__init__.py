from ._cli import main
from ._report import N_SIGMA, ReportBuilder, TheoremReport
from ._theorems import run_theorem1, run_theorem2, run_theorem3, run_theorem4

__all__ = [
    "TheoremReport",
    "ReportBuilder",
    "N_SIGMA",
    "run_theorem1",
    "run_theorem2",
    "run_theorem3",
    "run_theorem4",
    "main",
]
