"""Truncated power series over the complex numbers.

Coefficient extraction from products of the cycle generating function is the
exact (non-Monte-Carlo) route to every finite-n expectation used here.  All
extractions run in the rescaled variable ``u = t / r``: the coefficients of
``G(r u)`` are ``h_n r**n``, which grow only polynomially in ``n`` for the
weight families in :mod:`ewens_charpoly.weights`, while ``h_n`` itself may
grow or decay like ``r**-n``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DomainError, PrecondError


class PowerSeries:
    """Coefficients ``c_0 .. c_N`` of a series truncated after ``z**N``.

    Binary operations truncate to the smaller order of the operands.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("need a non-empty 1-d coefficient list")
        c.flags.writeable = False
        self.coeffs = c

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def one(cls, order: int) -> PowerSeries:
        c = np.zeros(order + 1, dtype=complex)
        c[0] = 1
        return cls(c)

    def truncate(self, order: int) -> PowerSeries:
        return PowerSeries(self.coeffs[: order + 1])

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"PowerSeries({self.coeffs.tolist()!r})"

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            c = self.coeffs.copy()
            c[0] += other
            return PowerSeries(c)
        n = min(self.order, other.order) + 1
        return PowerSeries(self.coeffs[:n] + other.coeffs[:n])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return mul(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return div(self, other)
        return PowerSeries(self.coeffs / other)

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (Horner)."""
        return np.polynomial.polynomial.polyval(z, self.coeffs)


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order) + 1
    return PowerSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def reciprocal(a: PowerSeries) -> PowerSeries:
    if a.coeffs[0] == 0:
        raise PrecondError("series with zero constant term is not invertible")
    c = a.coeffs
    out = np.zeros_like(c)
    out[0] = 1 / c[0]
    for n in range(1, c.size):
        out[n] = -np.dot(c[1 : n + 1], out[n - 1 :: -1]) / c[0]
    return PowerSeries(out)


def div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return mul(a, reciprocal(b))


def _exp_coeffs(c: np.ndarray) -> np.ndarray:
    # n E_n = sum_{k=1}^{n} k c_k E_{n-k}, from E' = c' E.
    kc = np.arange(c.size) * c
    out = np.zeros(c.size, dtype=np.result_type(c, float))
    out[0] = 1
    for n in range(1, c.size):
        out[n] = np.dot(kc[1 : n + 1], out[n - 1 :: -1]) / n
    return out


def exp_series(a: PowerSeries) -> PowerSeries:
    """Formal ``exp(a)``; requires ``a[0] == 0``."""
    if a.coeffs[0] != 0:
        raise PrecondError("exp_series needs a zero constant term")
    return PowerSeries(_exp_coeffs(a.coeffs))


def log_series(a: PowerSeries) -> PowerSeries:
    """Formal ``log(a)``; requires ``a[0] == 1``."""
    c = a.coeffs
    if c[0] != 1:
        raise PrecondError("log_series needs constant term 1")
    out = np.zeros_like(c)
    k = np.arange(c.size)
    for n in range(1, c.size):
        # a' = L' a  =>  n a_n = sum_{k=1}^{n} k L_k a_{n-k}
        out[n] = c[n] - np.dot(k[1:n] * out[1:n], c[n - 1 : 0 : -1]) / n
    return PowerSeries(out)


class HCoeffs(NamedTuple):
    """Normalising constants ``h_n`` and their rescaled form ``h_n r**n``."""

    h: np.ndarray
    scaled: np.ndarray


def _scaled_h(seq, n_max: int) -> np.ndarray:
    a = seq.scaled_thetas(n_max) if n_max > 0 else np.zeros(0)
    out = np.empty(n_max + 1)
    out[0] = 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, n_max + 1):
            out[n] = np.dot(a[:n], out[n - 1 :: -1]) / n
    if not np.all(np.isfinite(out)):
        bad = int(np.argmin(np.isfinite(out)))
        raise OverflowError(f"h_n r^n overflows double precision at n = {bad}")
    return out


def h_coeffs(seq, n_max: int) -> HCoeffs:
    """Coefficients of ``G(z) = sum_n h_n z**n`` up to ``n_max``.

    Uses ``n h_n = sum_{k=1}^{n} theta_k h_{n-k}`` in the rescaled variable.
    ``h`` itself may under/overflow when ``r != 1``; ``scaled`` is what the
    rest of the package consumes.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    scaled = _scaled_h(seq, n_max)
    with np.errstate(over="ignore", under="ignore"):
        h = scaled * seq.r ** -np.arange(n_max + 1, dtype=float)
    return HCoeffs(h, scaled)


def _extract(log_coeffs: np.ndarray, seq, n: int):
    # [t^n] exp(sum c_k (t/r)^k ...) / h_n, everything in u = t/r.
    top = _exp_coeffs(log_coeffs)[n]
    return top / _scaled_h(seq, n)[n]


def second_moment_exact(seq, z, n: int) -> float:
    """Exact ``E|p_n(z)|^2`` by coefficient extraction.

    ``sum_n h_n E|p_n(z)|^2 t**n = G(t) G(t|z|^2) / (G(tz) G(t conj z))``; taking
    logarithms the right side is ``exp(sum_k theta_k/k |1 - z**k|^2 t**k)``.
    """
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("second moment requires |z| < 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    k = np.arange(1, n + 1)
    c = np.zeros(n + 1)
    c[1:] = seq.scaled_thetas(n) / k * np.abs(1 - z ** k) ** 2
    return float(_extract(c, seq, n))


def second_moment_limit(seq, z) -> float:
    """``G(r|z|^2) / |G(rz)|^2``, the large-n limit of the second moment."""
    from .weights import g_eval

    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("second moment requires |z| < 1")
    r = seq.r
    return float(np.exp(np.real(g_eval(seq, r * abs(z) ** 2)) - 2 * np.real(g_eval(seq, r * z))))


def joint_cycle_cf_exact(seq, s, n: int) -> complex:
    """``E[exp(i sum_{m<=b} s_m C_m)]`` at size ``n`` by coefficient extraction.

    The generating function in ``t`` is
    ``exp(sum_{m<=b} theta_m/m (e^{i s_m} - 1) t**m) G(t)``.
    """
    s = np.asarray(s, dtype=float)
    b = s.size
    if b > n:
        raise ValueError("need len(s) <= n")
    k = np.arange(1, n + 1)
    c = np.zeros(n + 1, dtype=complex)
    c[1:] = seq.scaled_thetas(n) / k
    c[1 : b + 1] *= np.exp(1j * s)
    return complex(_extract(c, seq, n))
