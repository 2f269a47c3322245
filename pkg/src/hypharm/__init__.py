"""Exact-arithmetic toolkit for reciprocal-power-sum distinctness checking.

Everything here computes with big integers, reduced rationals, or dyadic
enclosures; no floating point is used in any verified path.
"""

__version__ = "0.1.0"

from .kernel import (
    Enclosure,
    ExactRational,
    PrimeSieve,
    Verdict,
    factorial_valuation,
    lcm_progression,
    p_adic_valuation,
    sqrt_enclosure,
)
from .sums import (
    Interval,
    IntervalPair,
    epsilon,
    eta_band_report,
    g_exact,
    g_mod,
    reduce_overlap,
    solve_eta,
    telescope_check,
)

__all__ = [
    "Enclosure",
    "ExactRational",
    "Interval",
    "IntervalPair",
    "PrimeSieve",
    "Verdict",
    "epsilon",
    "eta_band_report",
    "factorial_valuation",
    "g_exact",
    "g_mod",
    "lcm_progression",
    "p_adic_valuation",
    "reduce_overlap",
    "solve_eta",
    "sqrt_enclosure",
    "telescope_check",
]
