import json
import math

import numpy as np
import pytest
from scipy import stats as sps

from ewens_charpoly.series import second_moment_exact
from ewens_charpoly.stats import (
    McReport,
    charpoly_vs_limit_test,
    covariance_test,
    enumeration_check,
    mc_second_moment,
    trace_distribution_test,
    tv_to_poisson_product,
)
from ewens_charpoly.errors import SizeError
from ewens_charpoly.weights import ThetaSequence

from conftest import FAMILIES

E1, E2 = ThetaSequence.ewens(1.0), ThetaSequence.ewens(2.0)


def test_report_invariants():
    with pytest.raises(ValueError):
        McReport("x", 10, 1.0, -1.0, 1.0, 0.0, 0)
    with pytest.raises(ValueError):
        McReport("x", 1, 1.0, 0.0, 1.0, 0.0, 0)


def test_report_json_keys():
    rep = mc_second_moment(E1, 5, 0.3 + 0.1j, 1000, 2)
    d = json.loads(rep.to_json())
    assert {"experiment", "n_samples", "estimate", "std_error", "target", "z_sigma",
            "seed"} <= set(d)
    assert d["extra"]["z"] == {"re": 0.3, "im": 0.1}


def test_second_moment_at_origin():
    rep = mc_second_moment(FAMILIES["custom"], 20, 0, 100, 0)
    assert rep.estimate == 1 and rep.std_error == 0 and rep.z_sigma == 0


def test_second_moment_small_n():
    rep = mc_second_moment(E1, 2, 0.5, 1_000_000, 1)
    assert rep.target == pytest.approx(0.3125)
    assert rep.z_sigma < 3


def test_second_moment_large_n():
    rep = mc_second_moment(E2, 400, 0.5, 100_000, 1)
    assert rep.target == second_moment_exact(E2, 0.5, 400)
    assert rep.z_sigma < 3
    assert rep.extra["limit"] == pytest.approx(1 / 9)


def test_standard_error_scaling():
    a = mc_second_moment(E2, 50, 0.6j, 20_000, 8)
    b = mc_second_moment(E2, 50, 0.6j, 40_000, 8)
    assert 0.6 <= b.std_error / a.std_error <= 0.85


def test_reproducible_across_workers():
    a = mc_second_moment(FAMILIES["scaled22"], 300, 0.4, 5000, 12, workers=1)
    b = mc_second_moment(FAMILIES["scaled22"], 300, 0.4, 5000, 12, workers=2)
    assert a.to_json() == b.to_json()


def test_tv_hand_example():
    # point mass at 0 vs Poisson(1): TV = 1 - e^{-1}
    samples = np.zeros((100, 1), dtype=int)
    assert tv_to_poisson_product(samples, [1.0]) == pytest.approx(1 - math.exp(-1))


def test_tv_against_full_support_sum():
    rng = np.random.default_rng(0)
    means = [0.8, 0.3]
    samples = rng.poisson(means, size=(3000, 2))
    grid = np.array([(i, j) for i in range(40) for j in range(40)])
    q = sps.poisson.pmf(grid[:, 0], means[0]) * sps.poisson.pmf(grid[:, 1], means[1])
    counts = {tuple(r): c for r, c in zip(*np.unique(samples, axis=0, return_counts=True))}
    p = np.array([counts.get(tuple(g), 0) / 3000 for g in grid])
    assert tv_to_poisson_product(samples, means) == pytest.approx(0.5 * np.abs(p - q).sum(), abs=1e-12)


def test_trace_empty():
    rep = trace_distribution_test(E1, 10, 0, 100, 0)
    assert rep.joint_tv == 0 and rep.marginal_tv == []


def test_trace_size_one_far_from_limit():
    rep = trace_distribution_test(E1, 1, 1, 10_000, 0)
    assert rep.joint_tv > 0.1


def test_trace_large_n_close_to_poisson():
    rep = trace_distribution_test(E1, 5000, 3, 100_000, 5)
    assert rep.joint_tv < 0.05
    assert max(rep.marginal_tv) < 0.05


def test_ks_at_origin():
    rep = charpoly_vs_limit_test(E2, 100, 0, 500, 1)
    assert rep.ks_re == rep.ks_im == rep.ks_log_abs == 0


def test_ks_ewens1():
    rep = charpoly_vs_limit_test(E1, 2000, 0.5, 10_000, 2)
    assert rep.ks_log_abs < 0.05


def test_ks_ewens2_complex_point():
    rep = charpoly_vs_limit_test(E2, 2000, 0.3 + 0.4j, 10_000, 3)
    assert rep.ks_re < 0.05 and rep.ks_im < 0.05


def test_ks_detects_small_n():
    # at n = 3 the law of p_n(0.5) is far from the limit
    rep = charpoly_vs_limit_test(E1, 3, 0.5, 10_000, 4)
    assert rep.ks_log_abs > 0.1


def test_covariance_at_zero():
    rep = covariance_test(E1, 0.5, 0, 1000, 0)
    assert rep.target == 0 and rep.z_sigma < 3


def test_covariance_scaled_family():
    rep = covariance_test(FAMILIES["scaled22"], 0.4, 0.2, 1_000_000, 6)
    assert rep.z_sigma < 3


def test_enumeration_check():
    assert enumeration_check(E1, 8)["max_error"] < 1e-10
    assert enumeration_check(FAMILIES["scaled22"], 8)["max_error"] < 1e-10
    assert enumeration_check(E2, 1)["max_error"] < 1e-15
    with pytest.raises(SizeError):
        enumeration_check(E1, 13)
