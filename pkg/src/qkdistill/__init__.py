"""Key-distillation analysis for symmetric qunit channels.

Core library layout:

* :mod:`qkdistill.model` - channel types and the Bob/Eve complementarity
  relation (closed form and square-root-measurement oracle);
* :mod:`qkdistill.infotheory` - one-way key yield, distillation
  thresholds, and threshold-curve sampling;
* :mod:`qkdistill.distill` - exact and asymptotic advantage-distillation
  error probabilities;
* :mod:`qkdistill.simulator` - seeded Monte Carlo protocol runs;
* :mod:`qkdistill.verification` - dual-route cross-check suites;
* :mod:`qkdistill.service` / :mod:`qkdistill.cli` - HTTP service and its
  thin command-line client.
"""

__version__ = "0.1.0"

from .distill import (ADExact, ADTableRow, RatioLimits, accept_rate, ad_exact,
    ad_table, bob_error_after_ad, bob_error_ratio, eve_error_bruteforce,
    eve_error_exact, eve_errors_exact, eve_gen_function, post_ad_channels,
    ratio_limits)
from .errors import ParameterError, SizeLimitError
from .infotheory import (CurvePoint, ThresholdReport, ad_threshold_satisfied,
    ck_boundary_beta0, ck_intersection, ck_yield, curve_data, ed_threshold,
    threshold_report, triple_point, yield_from_rates)
from .model import (BobChannel, EveChannel, GramMatrix, bob_channel,
    eve_channel, eve_from_bob, gram_matrix, srm_eve_oracle)
from .simulator import (DistilledYieldEstimate, ProtocolConfig, SimReport,
    distilled_ck_estimate, run_ad_simulation, sample_triple)
from .verification import CheckResult, run_checks

__all__ = [
    "ADExact", "ADTableRow", "BobChannel", "CheckResult", "CurvePoint",
    "DistilledYieldEstimate", "EveChannel", "GramMatrix", "ParameterError",
    "ProtocolConfig", "RatioLimits", "SimReport", "SizeLimitError",
    "ThresholdReport", "accept_rate", "ad_exact", "ad_table",
    "ad_threshold_satisfied", "bob_channel", "bob_error_after_ad",
    "bob_error_ratio", "ck_boundary_beta0", "ck_intersection", "ck_yield",
    "curve_data", "distilled_ck_estimate", "ed_threshold", "eve_channel",
    "eve_error_bruteforce", "eve_error_exact", "eve_errors_exact",
    "eve_from_bob", "eve_gen_function", "gram_matrix", "post_ad_channels",
    "ratio_limits", "run_ad_simulation", "run_checks", "sample_triple",
    "srm_eve_oracle", "threshold_report", "triple_point", "yield_from_rates",
]
