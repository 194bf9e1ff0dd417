"""Cycle-weight families for the generalized Ewens measure.

A family assigns a positive weight ``theta_k`` to every cycle length ``k``;
a permutation gets weight ``prod_k theta_k ** C_k``.  Its cycle generating
function is

    g(z) = sum_k theta_k z**k / k,        G(z) = exp(g(z)).

Every family here is a finite prefix followed by a scaled-Ewens tail
``theta_k = theta * rho**-k``.  The tail fixes the radius of convergence
``r = rho`` and the logarithmic singularity ``g(z) ~ -theta log(1 - z/r) + K``
at ``z = r``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ThetaSequence:
    """Weight family: ``prefix`` for k <= len(prefix), then ``tail_theta * tail_rho**-k``."""

    family: str
    prefix: tuple[float, ...]
    tail_theta: float
    tail_rho: float

    def __post_init__(self):
        if self.family not in ("ewens", "scaled", "custom"):
            raise ValueError(f"unknown family {self.family!r}")
        if not self.tail_theta > 0:
            raise ValueError("tail theta must be positive")
        if not self.tail_rho > 0:
            raise ValueError("tail rho must be positive")
        if any(not t > 0 for t in self.prefix):
            raise ValueError("prefix weights must be positive")

    @classmethod
    def ewens(cls, theta: float) -> ThetaSequence:
        return cls("ewens", (), float(theta), 1.0)

    @classmethod
    def scaled(cls, theta: float, rho: float) -> ThetaSequence:
        return cls("scaled", (), float(theta), float(rho))

    @classmethod
    def custom(cls, prefix, theta: float, rho: float) -> ThetaSequence:
        return cls("custom", tuple(float(t) for t in prefix), float(theta), float(rho))

    @classmethod
    def parse(cls, text: str) -> ThetaSequence:
        """Parse ``ewens:T``, ``scaled:T:RHO`` or ``custom:T1,...,Tk|T:RHO``."""
        kind, _, rest = text.strip().partition(":")
        try:
            if kind == "ewens":
                return cls.ewens(float(rest))
            if kind == "scaled":
                theta, rho = rest.split(":")
                return cls.scaled(float(theta), float(rho))
            if kind == "custom":
                head, tail = rest.split("|")
                theta, rho = tail.split(":")
                prefix = [float(t) for t in head.split(",") if t.strip()]
                return cls.custom(prefix, float(theta), float(rho))
        except ValueError as exc:
            raise ValueError(f"malformed family {text!r}: {exc}") from None
        raise ValueError(f"unknown family {text!r}")

    def __str__(self):
        if self.family == "ewens":
            return f"ewens:{self.tail_theta:g}"
        if self.family == "scaled":
            return f"scaled:{self.tail_theta:g}:{self.tail_rho:g}"
        head = ",".join(f"{t:g}" for t in self.prefix)
        return f"custom:{head}|{self.tail_theta:g}:{self.tail_rho:g}"

    @property
    def r(self) -> float:
        return self.tail_rho

    @property
    def gamma(self) -> float:
        return self.tail_theta

    @property
    def K_const(self) -> float:
        # Value at z = r of the polynomial correcting the tail's log singularity.
        return float(sum((t * self.r ** k - self.tail_theta) / k
                         for k, t in enumerate(self.prefix, start=1)))

    def thetas(self, k_max: int) -> np.ndarray:
        """Array ``theta_1 .. theta_{k_max}``."""
        k = np.arange(1, k_max + 1, dtype=float)
        out = self.tail_theta * self.tail_rho ** -k
        p = min(len(self.prefix), k_max)
        out[:p] = self.prefix[:p]
        return out

    def scaled_thetas(self, k_max: int) -> np.ndarray:
        """Array ``theta_k * r**k`` for k = 1..k_max, the weights in the variable u = t/r.

        The tail contributes exactly ``tail_theta``, so no power of ``r`` is ever
        formed for it.
        """
        out = np.full(k_max, self.tail_theta)
        p = min(len(self.prefix), k_max)
        k = np.arange(1, p + 1, dtype=float)
        out[:p] = np.asarray(self.prefix[:p]) * self.r ** k
        return out


def theta(seq: ThetaSequence, k: int) -> float:
    if k < 1:
        raise ValueError("cycle length must be >= 1")
    if k <= len(seq.prefix):
        return seq.prefix[k - 1]
    return seq.tail_theta * seq.tail_rho ** -k


def _check_disk(seq, z):
    if np.any(np.abs(z) >= seq.r):
        raise DomainError(f"|z| must be < r = {seq.r:g}")


def g_eval(seq: ThetaSequence, z):
    """``g(z) = sum_k theta_k z**k / k`` for ``|z| < r`` (principal log branch)."""
    z = np.asarray(z, dtype=complex)
    _check_disk(seq, z)
    out = -seq.tail_theta * np.log(1 - z / seq.tail_rho)
    for k, t in enumerate(seq.prefix, start=1):
        out = out + (t - seq.tail_theta * seq.tail_rho ** -k) * z ** k / k
    return out[()] if out.ndim == 0 else out


def big_g_eval(seq: ThetaSequence, z):
    """``G(z) = exp(g(z))``."""
    return np.exp(g_eval(seq, z))
