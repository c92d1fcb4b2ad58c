"""Cross-checks between independently implemented computation routes.

Three dual-route comparisons are bundled here and surfaced through the
``verify`` service endpoint / CLI command:

* closed-form eavesdropper channel vs the square-root-measurement
  construction;
* exact coefficient-extraction block error vs brute-force enumeration;
* truncated generating-function series vs the closed-form evaluation.

``quick`` keeps everything sub-second; ``full`` runs the grids the library
is validated on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distill import eve_error_bruteforce, eve_errors_exact, eve_gen_function
from .errors import ParameterError
from .model import bob_channel, eve_channel, eve_from_bob, srm_eve_oracle

LEVELS = ("quick", "full")

SRM_TOL = 1e-12
AD_ORACLE_TOL = 1e-12
SERIES_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one dual-route comparison."""

    name: str
    max_residual: float
    tolerance: float
    passed: bool
    cases: int


def _interior_grid(n: int, count: int) -> list[float]:
    lo, hi = 1.0 / n, 1.0
    return [lo + (i + 1) * (hi - lo) / (count + 1) for i in range(count)]


def check_srm_oracle(ns: range, beta0_count: int) -> CheckResult:
    """Closed form vs square-root measurement across a channel grid."""
    worst = 0.0
    cases = 0
    for n in ns:
        for beta0 in _interior_grid(n, beta0_count) + [1.0]:
            closed = eve_from_bob(bob_channel(n, beta0))
            srm = srm_eve_oracle(bob_channel(n, beta0))
            worst = max(
                worst, abs(closed.eta0 - srm.eta0), abs(closed.eta1 - srm.eta1)
            )
            cases += 1
    return CheckResult("srm_vs_closed_form", worst, SRM_TOL, worst <= SRM_TOL, cases)


def check_ad_oracle(ns: range, l_max: int, eta0_count: int) -> CheckResult:
    """Coefficient extraction vs enumeration of the majority vote."""
    worst = 0.0
    cases = 0
    for n in ns:
        for eta0 in _interior_grid(n, eta0_count):
            e = eve_channel(n, eta0)
            exact = eve_errors_exact(e, l_max)
            for L in range(1, l_max + 1):
                worst = max(worst, abs(exact[L - 1] - eve_error_bruteforce(e, L)))
                cases += 1
    return CheckResult(
        "exact_vs_bruteforce", worst, AD_ORACLE_TOL, worst <= AD_ORACLE_TOL, cases
    )


def check_gen_function(
    ns: range, t_values: tuple[float, ...], series_terms: int
) -> CheckResult:
    """Truncated series of exact block errors vs the closed form."""
    worst = 0.0
    cases = 0
    for n in ns:
        beta0 = 2.0 / (n + 1)
        for eta0 in (eve_from_bob(bob_channel(n, beta0)).eta0, (1.0 / n + 1.0) / 2.0):
            e = eve_channel(n, eta0)
            errors = [1.0 / n] + eve_errors_exact(e, series_terms)
            for t in t_values:
                series = math.fsum(
                    errors[L] * t**L / math.factorial(L)
                    for L in range(series_terms + 1)
                )
                worst = max(worst, abs(series - eve_gen_function(e, t)))
                cases += 1
    return CheckResult(
        "series_vs_gen_function", worst, SERIES_TOL, worst <= SERIES_TOL, cases
    )


def run_checks(level: str) -> list[CheckResult]:
    """Run the configured suite; ``quick`` or ``full``."""
    if level == "quick":
        return [
            check_srm_oracle(range(2, 4), 10),
            check_ad_oracle(range(2, 4), 4, 3),
            check_gen_function(range(2, 3), (0.5, 1.0), 20),
        ]
    if level == "full":
        return [
            check_srm_oracle(range(2, 11), 50),
            check_ad_oracle(range(2, 5), 6, 5),
            check_gen_function(range(2, 4), (0.5, 1.0, 2.0, 3.0), 40),
        ]
    raise ParameterError(f"unknown verification level {level!r}; use one of {LEVELS}")
