"""Monte Carlo experiments comparing finite-n permutations with the limit field.

Every experiment is seeded; finite-n draws and limit-field draws use
independent child seeds, and every replica has its own stream, so reports are
bit-reproducible whatever the worker count.

The distance thresholds used by the acceptance suite (0.05 for TV and KS) are
multiples of the Monte Carlo noise floor at the default ensemble sizes, e.g.
``1.36 * sqrt(2 / 10**4) ~ 0.019`` for a two-sample KS statistic.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats as sps

from .charpoly import log_charpoly
from .errors import SizeError
from .ewens_core import enumeration_expectation, sample_cycle_types
from .limit_field import cov_f, mean_F, poisson_means, sample_limit_ensemble
from .rng import child_seed
from .series import joint_cycle_cf_exact, second_moment_exact, second_moment_limit

LIMIT_EPS = 1e-10


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": float(v.real), "im": float(v.imag)}
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


class _Report:
    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class McReport(_Report):
    experiment: str
    n_samples: int
    estimate: complex | float
    std_error: float
    target: complex | float
    z_sigma: float
    seed: int
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.std_error < 0:
            raise ValueError("std_error must be nonnegative")
        if self.n_samples < 2:
            raise ValueError("need at least two samples")


@dataclass
class TraceReport(_Report):
    experiment: str
    n: int
    k_max: int
    n_samples: int
    seed: int
    joint_tv: float
    marginal_tv: list
    note: str = "TV thresholds are Monte Carlo noise floors, not rates"


@dataclass
class KsReport(_Report):
    experiment: str
    n: int
    z: complex
    n_samples: int
    seed: int
    ks_re: float
    ks_im: float
    ks_log_abs: float


def _z_sigma(estimate, target, se):
    diff = abs(estimate - target)
    if se == 0:
        return 0.0 if diff == 0 else math.inf
    return float(diff / se)


def mean_report(experiment, values, target, seed, **extra) -> McReport:
    """Sample mean of ``values`` with its plain standard error."""
    values = np.asarray(values)
    est = values.mean()
    se = float(np.sqrt(np.mean(np.abs(values - est) ** 2) / (values.size - 1)))
    if np.isrealobj(values) and not isinstance(target, complex):
        est, target = float(est), float(target)
    else:
        est, target = complex(est), complex(target)
    return McReport(experiment, int(values.size), est, se, target,
                    _z_sigma(est, target, se), seed, extra)


def mc_second_moment(seq, n, z, n_samples, seed, workers=None) -> McReport:
    """Monte Carlo ``E|p_n(z)|^2`` against the exact finite-n value."""
    ens = sample_cycle_types(seq, n, n_samples, child_seed(seed, 0), workers=workers)
    values = np.exp(2 * ens.log_charpoly(z).real)
    return mean_report("second_moment", values, second_moment_exact(seq, z, n), seed,
                       family=str(seq), n=n, z=complex(z),
                       limit=second_moment_limit(seq, z))


def tv_to_poisson_product(samples: np.ndarray, means) -> float:
    """TV distance between the empirical law of integer rows and a product of Poissons.

    Mass the empirical law does not see is accounted for exactly as
    ``1 - sum_{x observed} q(x)``.
    """
    if samples.shape[1] == 0:
        return 0.0
    rows, counts = np.unique(samples, axis=0, return_counts=True)
    p = counts / samples.shape[0]
    q = np.prod(sps.poisson.pmf(rows, np.asarray(means)[None, :]), axis=1)
    return float(0.5 * (np.abs(p - q).sum() + max(0.0, 1.0 - q.sum())))


def trace_distribution_test(seq, n, k_max, n_samples, seed, workers=None) -> TraceReport:
    """Cycle counts ``(C_1..C_kmax)`` at size n against independent Poisson(theta_l r^l / l)."""
    if k_max > n:
        raise ValueError("k_max must be <= n")
    if k_max == 0:
        return TraceReport("trace_distribution", n, 0, n_samples, seed, 0.0, [])
    ens = sample_cycle_types(seq, n, n_samples, child_seed(seed, 0), workers=workers)
    c = ens.counts(k_max)
    lam = poisson_means(seq, k_max)
    joint = tv_to_poisson_product(c, lam)
    marg = [tv_to_poisson_product(c[:, l : l + 1], lam[l : l + 1]) for l in range(k_max)]
    return TraceReport("trace_distribution", n, k_max, n_samples, seed, joint, marg)


def _limit_delta(*zs):
    return max(max(abs(complex(z)) for z in zs), 0.5)


def ks_distance(a, b) -> float:
    return float(sps.ks_2samp(a, b).statistic)


def charpoly_vs_limit_test(seq, n, z, n_samples, seed, workers=None) -> KsReport:
    """Two-sample KS between ``p_n(z)`` and ``F(z)`` on Re, Im and log|.|."""
    z = complex(z)
    ens = sample_cycle_types(seq, n, n_samples, child_seed(seed, 0), workers=workers)
    lim = sample_limit_ensemble(seq, _limit_delta(z), LIMIT_EPS, n_samples,
                                child_seed(seed, 1), workers=workers)
    lp, lf = ens.log_charpoly(z), lim.log_F(z)
    vp, vf = np.exp(lp), np.exp(lf)
    return KsReport("charpoly_vs_limit", n, z, n_samples, seed,
                    ks_distance(vp.real, vf.real), ks_distance(vp.imag, vf.imag),
                    ks_distance(lp.real, lf.real))


def covariance_test(seq, z, w, n_samples, seed, workers=None) -> McReport:
    """Centered Monte Carlo ``Cov(f(z), f(w))`` against the closed-form double sum."""
    lim = sample_limit_ensemble(seq, _limit_delta(z, w), LIMIT_EPS, n_samples,
                                child_seed(seed, 1), workers=workers)
    fz, fw = lim.f(z), lim.f(w)
    prod = (fz - fz.mean()) * np.conj(fw - fw.mean())
    # n/(n-1) makes the centered estimator unbiased
    prod = prod * (prod.size / (prod.size - 1))
    return mean_report("covariance", prod, cov_f(seq, z, w), seed,
                       family=str(seq), z=complex(z), w=complex(w))


def limit_mean_test(seq, z, n_samples, seed, workers=None) -> McReport:
    """Monte Carlo ``E F(z)`` against ``1/G(rz)``."""
    lim = sample_limit_ensemble(seq, _limit_delta(z), LIMIT_EPS, n_samples,
                                child_seed(seed, 1), workers=workers)
    return mean_report("limit_mean", lim.F(z), mean_F(seq, z), seed,
                       family=str(seq), z=complex(z))


CHECK_POINTS = (0, 0.5, -0.3, 0.3 + 0.4j, 0.7j)
CHECK_LIMIT = 12


def enumeration_check(seq, n: int, n_vectors: int = 5, seed: int = 0) -> dict:
    """Largest gap between enumeration and series extraction over sizes ``1..n``.

    Compares ``E|p_m(z)|^2`` on :data:`CHECK_POINTS` and the joint characteristic
    function of ``(C_1, .., C_b)``, ``b = min(3, m)``, on ``n_vectors`` random
    frequency vectors drawn from ``seed``.
    """
    if n > CHECK_LIMIT:
        raise SizeError(f"enumerate-check is limited to n <= {CHECK_LIMIT}")
    if n < 1:
        raise ValueError("n must be >= 1")
    svecs = np.random.default_rng(seed).uniform(-np.pi, np.pi, size=(n_vectors, 3))
    err_m2 = err_cf = 0.0
    for m in range(1, n + 1):
        for z in CHECK_POINTS:
            brute = enumeration_expectation(
                seq, m, lambda ct: float(np.exp(2 * log_charpoly(ct, z).real)))
            err_m2 = max(err_m2, abs(brute - second_moment_exact(seq, z, m)))
        b = min(3, m)
        for s in svecs[:, :b]:
            brute = enumeration_expectation(
                seq, m, lambda ct: np.exp(1j * np.dot(s, ct.counts[:b])))
            err_cf = max(err_cf, abs(brute - joint_cycle_cf_exact(seq, s, m)))
    return {"experiment": "enumerate_check", "family": str(seq), "n": n,
            "max_err_second_moment": err_m2, "max_err_joint_cf": err_cf,
            "max_error": max(err_m2, err_cf)}
