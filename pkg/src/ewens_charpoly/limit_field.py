"""The Poisson limit field and its truncations.

With ``Y_l`` independent Poisson of mean ``theta_l r**l / l`` and
``X_k = sum_{l | k} l Y_l``, the limit of the characteristic polynomial is

    F(z) = exp(-f(z)),   f(z) = sum_k X_k z**k / k = -sum_l Y_l log(1 - z**l).

A sample keeps ``Y_1 .. Y_K`` only.  ``K`` is the smallest depth for which the
expected size of the dropped part of ``log F`` on ``|z| <= delta``,

    sum_{k > K} (theta_k r**k / k) delta**k / (1 - delta),

is at most ``eps / 10``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from . import rng
from ._parallel import workers as _workers
from .errors import ConfigError, DomainError
from .ewens_core import _segment_sum
from .weights import big_g_eval, g_eval

MAX_DEPTH = 10**6
MAX_POISSON_MEAN = 700.0  # exp(-mean) must stay a normal double
SAFETY = 10.0


def poisson_means(seq, K: int) -> np.ndarray:
    return seq.scaled_thetas(K) / np.arange(1, K + 1)


def tail_bound(seq, delta: float, K: int) -> float:
    """Bound on ``E sup_{|z|<=delta} |sum_{k>K} Y_k log(1 - z**k)|``."""
    P = len(seq.prefix)
    total = 0.0
    if K < P:
        lam = poisson_means(seq, P)[K:]
        k = np.arange(K + 1, P + 1)
        total += float(np.sum(lam * delta**k)) / (1 - delta)
    k0 = max(K, P) + 1
    # tail_theta * sum_{k >= k0} delta^k / k  <=  tail_theta delta^k0 / (k0 (1 - delta))
    total += seq.tail_theta * delta**k0 / (k0 * (1 - delta) ** 2)
    return total


def truncation_depth(seq, delta: float, eps: float) -> int:
    if not 0 < delta < 1:
        raise DomainError("delta must lie in (0, 1)")
    if not eps > 0:
        raise ValueError("eps must be positive")
    budget = eps / SAFETY
    if tail_bound(seq, delta, MAX_DEPTH) > budget:
        raise ConfigError(f"tail bound cannot reach eps={eps:g} with K <= {MAX_DEPTH}")
    lo, hi = 1, MAX_DEPTH
    if tail_bound(seq, delta, lo) <= budget:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_bound(seq, delta, mid) <= budget:
            hi = mid
        else:
            lo = mid
    return hi


@njit(cache=True)
def poisson_inverse(mean, u):
    """Smallest x with P[Poisson(mean) <= x] > u (chop-down search from 0)."""
    p = np.exp(-mean)
    s = p
    x = 0
    cap = mean + 40.0 * np.sqrt(mean) + 100.0
    while u >= s and x < cap:
        x += 1
        p *= mean / x
        s += p
    return x


@njit(cache=True)
def _draw_field(lam, state, idx, mult, offset, write):
    c = 0
    for l in range(lam.size):
        state, u = rng.next_uniform(state)
        y = poisson_inverse(lam[l], u)
        if y > 0:
            if write:
                idx[offset + c] = l + 1
                mult[offset + c] = y
            c += 1
    return c


@njit(parallel=True, cache=True)
def _count_kernel(lam, seed_mixed, start, n_samples):
    out = np.empty(n_samples, dtype=np.int64)
    dummy = np.empty(0, dtype=np.int64)
    for i in prange(n_samples):
        state = rng.stream_start(seed_mixed, start + i)
        out[i] = _draw_field(lam, state, dummy, dummy, 0, False)
    return out


@njit(parallel=True, cache=True)
def _fill_kernel(lam, seed_mixed, start, offsets, idx, mult):
    for i in prange(offsets.size - 1):
        state = rng.stream_start(seed_mixed, start + i)
        _draw_field(lam, state, idx, mult, offsets[i], True)


def _check_disk(z, delta):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > delta):
        raise DomainError(f"|z| must be <= delta = {delta:g}")
    return z


@dataclass(frozen=True)
class LimitFieldSample:
    y: tuple[int, ...]
    K: int
    eps: float
    delta: float
    seed: int


@dataclass(frozen=True)
class LimitEnsemble:
    """Nonzero ``(l, Y_l)`` pairs of ``n_samples`` replicas, stored flat."""

    K: int
    eps: float
    delta: float
    seed: int
    index: np.ndarray
    mult: np.ndarray
    offsets: np.ndarray
    start: int = 0

    @property
    def n_samples(self) -> int:
        return self.offsets.size - 1

    def owner(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_samples), np.diff(self.offsets))

    def y(self, k_max: int | None = None) -> np.ndarray:
        """Dense ``(n_samples, k_max)`` array of ``Y_1 .. Y_{k_max}`` (zero past K)."""
        k_max = self.K if k_max is None else k_max
        keep = self.index <= k_max
        out = np.zeros(self.n_samples * k_max, dtype=np.int64)
        out[self.owner()[keep] * k_max + self.index[keep] - 1] = self.mult[keep]
        return out.reshape(self.n_samples, k_max)

    def x(self, k_max: int) -> np.ndarray:
        """``X_k = sum_{l | k} l Y_l`` for k = 1..k_max."""
        y = self.y(k_max)
        out = np.zeros_like(y)
        for l in range(1, k_max + 1):
            out[:, l - 1 :: l] += l * y[:, l - 1 : l]
        return out

    def log_F(self, z) -> np.ndarray:
        z = complex(_check_disk(z, self.delta))
        terms = self.mult * np.log1p(-(z ** self.index.astype(float)))
        return _segment_sum(terms, self.owner(), self.n_samples)

    def F(self, z) -> np.ndarray:
        return np.exp(self.log_F(z))

    def f(self, z) -> np.ndarray:
        """``f(z)`` of the truncated field, summed to all orders in ``z``."""
        return -self.log_F(z)

    def sample(self, i: int) -> LimitFieldSample:
        y = self.y()[i]
        return LimitFieldSample(tuple(int(v) for v in y), self.K, self.eps, self.delta, self.seed)


def sample_limit_ensemble(seq, delta: float, eps: float, n_samples: int, seed: int,
                          start: int = 0, workers: int | None = None) -> LimitEnsemble:
    """Replicas ``start .. start+n_samples-1`` of the truncated Poisson field.

    ``Y_l`` of a replica is drawn from the ``l``-th uniform of its stream, so
    the draws do not depend on ``K`` beyond truncation.
    """
    K = truncation_depth(seq, delta, eps)
    lam = poisson_means(seq, K)
    if lam.max() > MAX_POISSON_MEAN:
        raise ConfigError(f"Poisson mean {lam.max():g} too large for inversion sampling")
    seed_mixed = np.uint64(rng.mix64(seed))
    with _workers(workers):
        sizes = _count_kernel(lam, seed_mixed, start, n_samples)
        offsets = np.zeros(n_samples + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        idx = np.empty(offsets[-1], dtype=np.int64)
        mult = np.empty(offsets[-1], dtype=np.int64)
        _fill_kernel(lam, seed_mixed, start, offsets, idx, mult)
    return LimitEnsemble(K, eps, delta, seed, idx, mult, offsets, start)


def sample_limit(seq, delta: float, eps: float, rng_seed: int) -> LimitFieldSample:
    """One truncated draw ``(Y_1, .., Y_K)``; replica 0 of the stream for ``rng_seed``."""
    return sample_limit_ensemble(seq, delta, eps, 1, rng_seed).sample(0)


def log_F(s: LimitFieldSample, z):
    """``sum_l Y_l log(1 - z**l)``; ``z`` may be an array."""
    z = _check_disk(z, s.delta)
    out = np.zeros_like(z)
    for l, y in enumerate(s.y, start=1):
        if y:
            out = out + y * np.log1p(-(z**l))
    return out


def eval_F(s: LimitFieldSample, z) -> complex:
    """``F(z) = prod_{l <= K} (1 - z**l) ** Y_l``."""
    return complex(np.exp(log_F(s, complex(z))))


def x_coeffs(s: LimitFieldSample, m_max: int) -> np.ndarray:
    """``X_1 .. X_{m_max}`` from the truncated ``Y``."""
    out = np.zeros(m_max, dtype=np.int64)
    for l, y in enumerate(s.y[:m_max], start=1):
        out[l - 1 :: l] += l * y
    return out


def eval_f(s: LimitFieldSample, z, m_max: int) -> complex:
    """Partial sum ``sum_{k <= m_max} X_k z**k / k``."""
    z = complex(_check_disk(z, s.delta))
    k = np.arange(1, m_max + 1)
    return complex(np.sum(x_coeffs(s, m_max) / k * z**k))


def mean_F(seq, z) -> complex:
    """``E F(z) = prod_k exp(-theta_k (rz)**k / k) = 1 / G(rz)``."""
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("|z| must be < 1")
    return complex(1 / big_g_eval(seq, seq.r * z))


def cov_f(seq, z, w, tol: float = 1e-12) -> complex:
    """``Cov(f(z), f(w)) = sum_{a,b >= 1} g(r z**a conj(w)**b) / (ab)``.

    The double sum is cut at ``a <= A``, ``b <= B`` with the dropped part
    below ``tol``; this uses ``|g(r u)| <= C |u|`` on ``|u| <= |z||w|`` with
    ``C = g(r|z||w|) / (|z||w|)`` (all Taylor coefficients of g are positive).
    """
    z, w = complex(z), complex(w)
    if abs(z) >= 1 or abs(w) >= 1:
        raise DomainError("|z| and |w| must be < 1")
    x0 = abs(z) * abs(w)
    if x0 == 0:
        return 0j
    C = float(np.real(g_eval(seq, seq.r * x0))) / x0

    def depth(x, y):
        # smallest A with C * x^{A+1} / ((A+1)(1-x)) * (-log(1-y)) <= tol/2
        ly = -math.log1p(-y)
        A = 1
        while C * x ** (A + 1) / ((A + 1) * (1 - x)) * ly > tol / 2:
            A += 1
        return A

    A, B = depth(abs(z), abs(w)), depth(abs(w), abs(z))
    a = np.arange(1, A + 1)[:, None]
    b = np.arange(1, B + 1)[None, :]
    u = seq.r * z**a * np.conj(w) ** b
    return complex(np.sum(g_eval(seq, u) / (a * b)))
