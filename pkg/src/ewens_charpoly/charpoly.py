"""Characteristic polynomial ``det(1 - zA)`` of a permutation matrix.

For a permutation with cycle counts ``C_k`` the polynomial factors as
``prod_k (1 - z**k) ** C_k``, so everything is computed from the cycle type.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class CharPolyEval:
    z: complex
    value: complex
    log_value: complex


def log_charpoly(ct, z):
    """``sum_k C_k log(1 - z**k)`` (principal branch per factor); ``z`` may be an array."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("characteristic polynomial is evaluated on |z| < 1 only")
    out = np.zeros_like(z)
    for k, c in ct.support().items():
        out = out + c * np.log1p(-(z ** k))
    return out


def eval_charpoly(ct, z) -> CharPolyEval:
    z = complex(z)
    lv = complex(log_charpoly(ct, z))
    return CharPolyEval(z, complex(np.exp(lv)), lv)


def traces(ct, k_max: int) -> list[int]:
    """``Tr[A**k] = sum_{l | k} l C_l`` for k = 1..k_max."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    out = [0] * k_max
    for l, c in ct.support().items():
        for k in range(l, k_max + 1, l):
            out[k - 1] += l * c
    return out


def secular_coeffs(ct, m: int) -> list[complex]:
    """Coefficients ``xi_0 .. xi_m`` of ``p(z) = sum xi_k z**k`` from traces.

    Newton's identities with power sums ``Tr[A**j]``:
    ``xi_k = -(1/k) sum_{j=1}^{k} Tr[A**j] xi_{k-j}``.
    """
    if m > ct.n:
        raise IndexError(f"m = {m} exceeds the degree n = {ct.n}")
    if m < 0:
        raise ValueError("m must be >= 0")
    tr = traces(ct, m) if m else []
    xi = [1]
    for k in range(1, m + 1):
        # exact: the coefficients of an integer polynomial
        xi.append(-sum(tr[j - 1] * xi[k - j] for j in range(1, k + 1)) // k)
    return [complex(x) for x in xi]
