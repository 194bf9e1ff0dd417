"""Characteristic polynomials of generalized-Ewens permutation matrices.

Exact generating-function oracles, exact cycle-type samplers, the Poisson
limit field ``F(z) = prod_k (1 - z**k) ** Y_k`` and Monte Carlo experiments
tying them together.
"""

from .charpoly import CharPolyEval, eval_charpoly, secular_coeffs, traces
from .errors import ConfigError, DomainError, PrecondError, SizeError
from .ewens_core import (
    CycleEnsemble,
    CycleType,
    PermutationSample,
    cycle_type_prob,
    enumerate_types,
    sample_cycle_type,
    sample_cycle_types,
    weight,
)
from .limit_field import (
    LimitEnsemble,
    LimitFieldSample,
    cov_f,
    eval_F,
    eval_f,
    mean_F,
    sample_limit,
    sample_limit_ensemble,
    truncation_depth,
)
from .series import (
    PowerSeries,
    exp_series,
    h_coeffs,
    joint_cycle_cf_exact,
    log_series,
    mul,
    second_moment_exact,
    second_moment_limit,
)
from .stats import (
    McReport,
    charpoly_vs_limit_test,
    covariance_test,
    limit_mean_test,
    mc_second_moment,
    trace_distribution_test,
)
from .weights import ThetaSequence, big_g_eval, g_eval, theta

__version__ = "0.1.0"
