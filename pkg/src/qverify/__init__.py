"""Exact verification of finite q-series identities, Lucas-type formulas and
the bijections and Lagrange-inversion steps behind them."""

from .errors import ConfigError, QVerifyError
from .exact import LaurentPoly, QuadExt, TruncSeries, series_det
from .qkernel import binomial, gauss_binomial, q_pochhammer_power
from .records import VerificationRecord
from .report import emit_report
from .suite import SuiteConfig, SuiteReport, run_suite
from .sums import CyclicSumSpec, enumerate_support, eval_cyclic_q_sum, eval_cyclic_rational_sum

__all__ = [
    "ConfigError",
    "CyclicSumSpec",
    "LaurentPoly",
    "QVerifyError",
    "QuadExt",
    "SuiteConfig",
    "SuiteReport",
    "TruncSeries",
    "VerificationRecord",
    "binomial",
    "emit_report",
    "enumerate_support",
    "eval_cyclic_q_sum",
    "eval_cyclic_rational_sum",
    "gauss_binomial",
    "q_pochhammer_power",
    "run_suite",
    "series_det",
]

__version__ = "0.1.0"
