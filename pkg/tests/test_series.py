import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ewens_charpoly.errors import DomainError, PrecondError
from ewens_charpoly.ewens_core import enumeration_expectation
from ewens_charpoly.charpoly import log_charpoly
from ewens_charpoly.series import (
    PowerSeries,
    div,
    exp_series,
    h_coeffs,
    joint_cycle_cf_exact,
    log_series,
    mul,
    second_moment_exact,
    second_moment_limit,
)
from ewens_charpoly.weights import ThetaSequence

from conftest import FAMILIES


def binom_general(theta, n_max):
    """binom(theta + n - 1, n) for n = 0..n_max as a running product."""
    out = [1.0]
    for n in range(1, n_max + 1):
        out.append(out[-1] * (theta + n - 1) / n)
    return np.array(out)


def test_mul_examples():
    assert np.allclose(mul(PowerSeries([1, 1, 0]), PowerSeries([1, -1, 0])).coeffs, [1, 0, -1])
    a = PowerSeries([0.3, -2, 1j, 4])
    assert np.array_equal(mul(a, PowerSeries.one(3)).coeffs, a.coeffs)
    geo = PowerSeries([1, 1, 1, 1])
    assert np.allclose(mul(geo, geo).coeffs, [1, 2, 3, 4])


def test_mul_truncates_to_min_order():
    assert mul(PowerSeries([1, 1, 1]), PowerSeries([1, 1, 1, 1, 1])).order == 2
    assert (PowerSeries([1, 2]) + PowerSeries([1, 2, 3])).order == 1


def test_exp_examples():
    e = exp_series(PowerSeries([0, 1, 0, 0, 0]))
    assert np.allclose(e.coeffs, [1, 1, 1 / 2, 1 / 6, 1 / 24], atol=1e-15)
    assert np.array_equal(exp_series(PowerSeries([0, 0, 0])).coeffs, [1, 0, 0])
    neg_log = PowerSeries([0] + [1 / k for k in range(1, 6)])
    assert np.allclose(exp_series(neg_log).coeffs, np.ones(6), atol=1e-14)


def test_log_examples():
    logs = log_series(PowerSeries(np.ones(5)))
    assert np.allclose(logs.coeffs, [0] + [1 / k for k in range(1, 5)], atol=1e-15)
    assert np.array_equal(log_series(PowerSeries([1, 0, 0])).coeffs, [0, 0, 0])


def test_exp_log_round_trip_200_series():
    rng = np.random.default_rng(5)
    for _ in range(200):
        c = rng.normal(size=33) + 1j * rng.normal(size=33)
        c[0] = 0
        a = PowerSeries(c)
        back = log_series(exp_series(a))
        assert np.max(np.abs(back.coeffs - a.coeffs)) < 1e-10


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=16))
def test_log_exp_round_trip(tail):
    a = PowerSeries([1.0] + tail)
    assert np.allclose(exp_series(log_series(a)).coeffs, a.coeffs, atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=2, max_size=12),
       st.lists(st.floats(-3, 3), min_size=2, max_size=12))
def test_exp_is_multiplicative(x, y):
    a, b = PowerSeries([0.0] + x), PowerSeries([0.0] + y)
    lhs = exp_series(a + b)
    rhs = mul(exp_series(a), exp_series(b))
    assert np.allclose(lhs.coeffs, rhs.coeffs, rtol=1e-9, atol=1e-9)


def test_div_and_reciprocal():
    one_minus = PowerSeries([1, -1, 0, 0, 0])
    assert np.allclose(div(PowerSeries.one(4), one_minus).coeffs, np.ones(5))
    with pytest.raises(PrecondError):
        div(PowerSeries.one(2), PowerSeries([0, 1, 0]))


def test_preconditions():
    with pytest.raises(PrecondError):
        exp_series(PowerSeries([1, 1]))
    with pytest.raises(PrecondError):
        log_series(PowerSeries([2, 1]))


def test_series_evaluation():
    p = PowerSeries([1, -1, -1, 1])
    assert p(0.5) == pytest.approx(0.5 * 0.75)


def test_h_examples():
    h = h_coeffs(ThetaSequence.ewens(1.0), 5)
    assert np.allclose(h.h, np.ones(6))
    assert h_coeffs(ThetaSequence.ewens(2.0), 3).h[3] == pytest.approx(4.0)
    s = h_coeffs(ThetaSequence.scaled(1.0, 2.0), 2)
    assert s.h[2] == pytest.approx(0.25, rel=1e-15)
    assert s.scaled[2] == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("theta", [0.5, 1.0, 2.0, 3.7])
def test_h_matches_binomial(theta):
    h = h_coeffs(ThetaSequence.ewens(theta), 200).h
    ref = binom_general(theta, 200)
    assert np.max(np.abs(h / ref - 1)) < 1e-10


def test_h_rescaled_scaled_family():
    # h_n r^n of ScaledEwens(theta, rho) is the Ewens(theta) constant
    s = h_coeffs(ThetaSequence.scaled(2.5, 3.0), 150)
    assert np.max(np.abs(s.scaled / binom_general(2.5, 150) - 1)) < 1e-10


def test_h_overflow():
    with pytest.raises(OverflowError):
        h_coeffs(ThetaSequence.ewens(600.0), 2000)


def test_second_moment_examples(family):
    for n in (0, 1, 5, 30):
        assert second_moment_exact(family, 0, n) == pytest.approx(1.0, abs=1e-14)
    assert second_moment_exact(ThetaSequence.ewens(1.0), 0.5, 2) == pytest.approx(0.3125, abs=1e-14)


def test_second_moment_large_n_near_limit():
    s = ThetaSequence.ewens(2.0)
    lim = 0.25 * 0.25 / 0.75**2
    assert second_moment_limit(s, 0.5) == pytest.approx(lim, rel=1e-12)
    assert abs(second_moment_exact(s, 0.5, 400) - lim) < 1e-2


def test_second_moment_domain():
    with pytest.raises(DomainError):
        second_moment_exact(ThetaSequence.ewens(1.0), 1.0, 3)


GRID = [0, 0.8, -0.5, 0.4 + 0.4j, 0.7j]


def test_second_moment_vs_enumeration(family):
    for n in range(1, 9):
        for z in GRID:
            brute = enumeration_expectation(
                family, n, lambda ct: float(np.exp(2 * log_charpoly(ct, z).real)))
            assert abs(second_moment_exact(family, z, n) - brute) < 1e-10


def test_joint_cf_examples(family):
    assert joint_cycle_cf_exact(family, [0, 0, 0], 6) == pytest.approx(1, abs=1e-14)
    e = ThetaSequence.ewens(1.0)
    assert joint_cycle_cf_exact(e, [math.pi], 2) == pytest.approx(1, abs=1e-14)
    assert joint_cycle_cf_exact(e, [math.pi / 2], 2) == pytest.approx(0, abs=1e-14)


def test_joint_cf_vs_enumeration(family):
    rng = np.random.default_rng(3)
    for n in range(1, 8):
        for b in range(1, min(3, n) + 1):
            for s in rng.uniform(-np.pi, np.pi, size=(4, b)):
                brute = enumeration_expectation(
                    family, n, lambda ct: np.exp(1j * np.dot(s, ct.counts[:b])))
                assert abs(joint_cycle_cf_exact(family, s, n) - brute) < 1e-10


def test_joint_cf_requires_b_le_n():
    with pytest.raises(ValueError):
        joint_cycle_cf_exact(FAMILIES["ewens1"], [1, 1, 1], 2)
