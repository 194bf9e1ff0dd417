"""Exact law of the cycle type under the generalized Ewens measure.

A permutation ``sigma`` of size ``n`` has probability
``prod_k theta_k ** C_k(sigma) / (n! h_n)``.  Everything studied in this
package depends on ``sigma`` only through its cycle type, so that is what we
enumerate and sample.

Sampling uses the sequential rule: with ``m`` points left, the cycle through
the smallest remaining point has length ``k`` with probability
``theta_k h_{m-k} / (m h_m)``.  Grouping permutations by that cycle gives
``(m-1)!/(m-k)!`` choices for it, which is where the rule comes from.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from . import rng
from ._parallel import workers as _workers
from .errors import DomainError, SizeError
from .series import _scaled_h

ENUMERATION_LIMIT = 40
PERMUTATION_LIMIT = 9


@dataclass(frozen=True)
class CycleType:
    """Cycle counts ``(C_1, ..., C_n)`` with ``sum k C_k = n``."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n:
            raise ValueError("counts must have length n")
        if any(c < 0 for c in self.counts):
            raise ValueError("cycle counts must be nonnegative")
        if sum(k * c for k, c in enumerate(self.counts, start=1)) != self.n:
            raise ValueError("sum of k * C_k must equal n")

    @classmethod
    def from_lengths(cls, lengths, n: int | None = None) -> CycleType:
        lengths = [int(x) for x in lengths]
        n = sum(lengths) if n is None else n
        counts = [0] * n
        for k in lengths:
            counts[k - 1] += 1
        return cls(n, tuple(counts))

    @classmethod
    def from_mapping(cls, n: int, mapping) -> CycleType:
        counts = [0] * n
        for k, c in mapping.items():
            counts[k - 1] = c
        return cls(n, tuple(counts))

    def lengths(self) -> list[int]:
        """Cycle lengths in nondecreasing order."""
        return [k for k, c in enumerate(self.counts, start=1) for _ in range(c)]

    def support(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.counts, start=1) if c}

    def multiplicity(self) -> int:
        """Number of permutations of size n with this cycle type."""
        den = 1
        for k, c in self.support().items():
            den *= k ** c * math.factorial(c)
        return math.factorial(self.n) // den

    def permutation(self) -> list[int]:
        """A representative: consecutive blocks ``(i, i+1, ..., i+k-1)`` as cycles."""
        perm, start = [], 0
        for k in self.lengths():
            perm.extend(start + (j + 1) % k for j in range(k))
            start += k
        return perm


@dataclass(frozen=True)
class PermutationSample:
    cycle_type: CycleType
    seed: int


def cycle_type_of(perm) -> CycleType:
    """Cycle type of a permutation given in one-line notation on ``0..n-1``."""
    n = len(perm)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            lengths.append(k)
    return CycleType.from_lengths(lengths, n)


def weight(seq, ct: CycleType) -> float:
    """``prod_k theta_k ** C_k``, accumulated in log space."""
    sup = ct.support()
    if not sup:
        return 1.0
    th = seq.thetas(max(sup))
    return math.exp(sum(c * math.log(th[k - 1]) for k, c in sup.items()))


def cycle_type_prob(seq, ct: CycleType) -> float:
    """``P[type = ct] = prod_k (theta_k/k)**C_k / C_k! / h_n``."""
    a = seq.scaled_thetas(ct.n)
    logp = -math.log(_scaled_h(seq, ct.n)[ct.n])
    for k, c in ct.support().items():
        logp += c * (math.log(a[k - 1]) - math.log(k)) - math.lgamma(c + 1)
    return math.exp(logp)


def _partitions(n, largest):
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def enumerate_types(n: int) -> list[CycleType]:
    """All cycle types of size ``n`` (one per integer partition)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ENUMERATION_LIMIT:
        raise SizeError(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    return [CycleType.from_lengths(p, n) for p in _partitions(n, n)]


@functools.lru_cache(maxsize=None)
def _permutation_table(n):
    return tuple(Counter(cycle_type_of(p) for p in itertools.permutations(range(n))).items())


def permutation_type_counts(n: int) -> dict:
    """Brute force: cycle type -> number of permutations in ``S_n`` having it."""
    if n > PERMUTATION_LIMIT:
        raise SizeError(f"permutation enumeration is limited to n <= {PERMUTATION_LIMIT}")
    return dict(_permutation_table(n))


def enumeration_expectation(seq, n: int, fn, by_permutation: bool = False):
    """``E[fn(type)]`` by summing the unnormalised measure over all types.

    Normalises by the total mass rather than by ``h_n``, so it does not share
    any code path with :mod:`ewens_charpoly.series`.  With ``by_permutation``
    the multiplicities come from listing every permutation of ``S_n``.
    """
    if by_permutation:
        table = permutation_type_counts(n).items()
    else:
        table = ((ct, ct.multiplicity()) for ct in enumerate_types(n))
    num = 0.0
    den = 0.0
    for ct, mult in table:
        w = mult * weight(seq, ct)
        num = num + w * fn(ct)
        den += w
    return num / den


# -- sampling kernels -------------------------------------------------------


@njit(cache=True)
def _draw_cycles(a, h_hat, n, state, buf, offset, write):
    m = n
    c = 0
    while m > 0:
        state, u = rng.next_uniform(state)
        target = u * m * h_hat[m]
        acc = 0.0
        k = 1
        while k < m:
            acc += a[k - 1] * h_hat[m - k]
            if acc > target:
                break
            k += 1
        if write:
            buf[offset + c] = k
        c += 1
        m -= k
    return c


@njit(parallel=True, cache=True)
def _count_kernel(a, h_hat, n, seed_mixed, start, n_samples):
    out = np.empty(n_samples, dtype=np.int64)
    dummy = np.empty(0, dtype=np.int64)
    for i in prange(n_samples):
        state = rng.stream_start(seed_mixed, start + i)
        out[i] = _draw_cycles(a, h_hat, n, state, dummy, 0, False)
    return out


@njit(parallel=True, cache=True)
def _fill_kernel(a, h_hat, n, seed_mixed, start, offsets, buf):
    for i in prange(offsets.size - 1):
        state = rng.stream_start(seed_mixed, start + i)
        _draw_cycles(a, h_hat, n, state, buf, offsets[i], True)


def _segment_sum(values, owner, n_rows):
    """Per-row sums of complex ``values``; ``owner`` gives each value's row."""
    re = np.bincount(owner, weights=values.real, minlength=n_rows)
    im = np.bincount(owner, weights=values.imag, minlength=n_rows)
    return re + 1j * im


@dataclass(frozen=True)
class CycleEnsemble:
    """Cycle lengths of ``n_samples`` independent replicas, stored flat.

    Replica ``i`` owns ``lengths[offsets[i]:offsets[i+1]]`` in draw order.
    """

    n: int
    lengths: np.ndarray
    offsets: np.ndarray
    seed: int
    start: int = 0

    @property
    def n_samples(self) -> int:
        return self.offsets.size - 1

    def owner(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_samples), np.diff(self.offsets))

    def cycle_type(self, i: int) -> CycleType:
        return CycleType.from_lengths(self.lengths[self.offsets[i] : self.offsets[i + 1]], self.n)

    def counts(self, k_max: int) -> np.ndarray:
        """Array of shape ``(n_samples, k_max)`` with ``C_1 .. C_{k_max}``."""
        keep = self.lengths <= k_max
        idx = self.owner()[keep] * k_max + self.lengths[keep] - 1
        flat = np.bincount(idx, minlength=self.n_samples * k_max)
        return flat.reshape(self.n_samples, k_max)

    def log_charpoly(self, z) -> np.ndarray:
        """``sum_k C_k log(1 - z**k)`` per replica (principal branch per factor)."""
        z = complex(z)
        if abs(z) >= 1:
            raise DomainError("|z| must be < 1")
        terms = np.log1p(-(z ** self.lengths.astype(float)))
        return _segment_sum(terms, self.owner(), self.n_samples)


def sample_cycle_types(seq, n: int, n_samples: int, seed: int, start: int = 0,
                       workers: int | None = None) -> CycleEnsemble:
    """Replicas ``start .. start+n_samples-1`` of the cycle-type sampler.

    Replica ``i`` depends only on ``(seq, n, seed, i)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = seq.scaled_thetas(n)
    h_hat = _scaled_h(seq, n)
    seed_mixed = np.uint64(rng.mix64(seed))
    with _workers(workers):
        sizes = _count_kernel(a, h_hat, n, seed_mixed, start, n_samples)
        offsets = np.zeros(n_samples + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        buf = np.empty(offsets[-1], dtype=np.int64)
        _fill_kernel(a, h_hat, n, seed_mixed, start, offsets, buf)
    return CycleEnsemble(n, buf, offsets, seed, start)


def sample_cycle_type(seq, n: int, rng_seed: int) -> PermutationSample:
    """One exact draw of the cycle type; replica 0 of the stream for ``rng_seed``."""
    ens = sample_cycle_types(seq, n, 1, rng_seed)
    return PermutationSample(ens.cycle_type(0), rng_seed)
