"""Sieves and pointwise evaluators for the von Mangoldt base, the Mobius
function, and the k-fold divisor functions.

The von Mangoldt function is handled through its prime base b(n)
(b(n) = p when n = p**a, otherwise 1), so tables stay integer-exact and a
logarithm only appears when a caller materializes Lambda(n) = log b(n).

Two evaluation routes are kept deliberately independent so they can
cross-check each other: tables come from sieving (divisor-convolution
passes for tau_k, segmented marking for the base and Mobius kinds), while
point_value goes through factorization and the stars-and-bars formula
tau_k(p**a) = binomial(a + k - 1, k - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, DomainError
from .primes import factor_pairs, prime_power_base, primes_upto

DEFAULT_MAX_ENTRIES = 1 << 27
_SEGMENT = 1 << 22


@dataclass(frozen=True)
class Kind:
    """Which arithmetic function a table holds: lambda, mu, or tau with order k."""

    name: str
    k: int | None = None

    def __post_init__(self) -> None:
        if self.name not in ("lambda", "mu", "tau"):
            raise DomainError(f"unknown kind {self.name!r}")
        if self.name == "tau":
            if self.k is None or self.k < 2:
                raise DomainError("tau kind needs order k >= 2")
        elif self.k is not None:
            raise DomainError(f"kind {self.name!r} takes no order")

    @property
    def label(self) -> str:
        return f"tau{self.k}" if self.name == "tau" else self.name


LAMBDA = Kind("lambda")
MU = Kind("mu")


def tau(k: int) -> Kind:
    return Kind("tau", k)


@dataclass(frozen=True)
class Factorization:
    """n together with its (prime, exponent) pairs in increasing prime order."""

    n: int
    factors: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ArithmeticTable:
    """Sieved values for n in [lo, hi).

    lambda tables store the prime base b(n), mu tables store values in
    {-1, 0, 1}, tau tables store the positive divisor counts.
    """

    kind: Kind
    lo: int
    hi: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if len(self.values) != self.hi - self.lo:
            raise DomainError("table length must equal hi - lo")
        self.values.setflags(write=False)

    def value(self, n: int) -> int:
        if not self.lo <= n < self.hi:
            raise DomainError(f"{n} outside table range [{self.lo}, {self.hi})")
        return int(self.values[n - self.lo])

    def lambda_values(self) -> np.ndarray:
        """Lambda(n) = log b(n) as floats; only valid for lambda tables."""
        if self.kind.name != "lambda":
            raise DomainError("lambda_values only applies to lambda tables")
        out = np.zeros(len(self.values), dtype=np.float64)
        nz = self.values > 1
        out[nz] = np.log(self.values[nz].astype(np.float64))
        return out


def factorize(n: int) -> Factorization:
    """Factor n, deterministic and verified by re-multiplication."""
    return Factorization(n, factor_pairs(n))


def _base_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """Prime base b(n) for n in [lo, hi); primes must reach sqrt(hi - 1)."""
    length = hi - lo
    base = np.ones(length, dtype=np.int64)
    seen = np.zeros(length, dtype=bool)
    for p in primes:
        p = int(p)
        start = ((lo + p - 1) // p) * p
        if start >= hi:
            continue
        idx = np.arange(start - lo, length, p)
        fresh = idx[~seen[idx]]
        seen[idx] = True
        if fresh.size == 0:
            continue
        # p is the least prime factor of each fresh n: n is a p-power
        # exactly when dividing out p completely leaves 1.
        r = (fresh + lo).astype(np.int64)
        while True:
            quot, rem = np.divmod(r, p)
            m = rem == 0
            if not m.any():
                break
            r[m] = quot[m]
        base[fresh[r == 1]] = p
    ns = np.arange(lo, hi, dtype=np.int64)
    untouched = ~seen & (ns > 1)
    base[untouched] = ns[untouched]
    return base


def _mu_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """Mobius values for n in [lo, hi); primes must reach sqrt(hi - 1)."""
    length = hi - lo
    mu = np.ones(length, dtype=np.int64)
    res = np.arange(lo, hi, dtype=np.int64)
    for p in primes:
        p = int(p)
        start = ((lo + p - 1) // p) * p
        if start >= hi:
            continue
        idx = np.arange(start - lo, length, p)
        res[idx] //= p
        mu[idx] = -mu[idx]
        sq = idx[res[idx] % p == 0]
        if sq.size:
            mu[sq] = 0
            r = res[sq]
            while True:
                quot, rem = np.divmod(r, p)
                m = rem == 0
                if not m.any():
                    break
                r[m] = quot[m]
            res[sq] = r
    big = res > 1
    mu[big] = -mu[big]
    return mu


def _divisor_convolve_ones(prev: np.ndarray) -> np.ndarray:
    """out[n] = sum_{d | n} prev[d] for 1 <= n < len(prev), sqrt-split."""
    top = prev.shape[0] - 1
    out = np.zeros_like(prev)
    r = math.isqrt(top)
    for d in range(1, r + 1):
        out[d::d] += prev[d]
    for m in range(1, top // (r + 1) + 1):
        dhi = top // m
        out[m * (r + 1) : m * dhi + 1 : m] += prev[r + 1 : dhi + 1]
    return out


def _tau_values(hi: int, k: int) -> np.ndarray:
    """tau_k(n) for 0 <= n < hi via k - 1 divisor-convolution passes."""
    vals = np.ones(hi, dtype=np.int64)
    vals[0] = 0
    for _ in range(k - 1):
        vals = _divisor_convolve_ones(vals)
    return vals


def sieve_table(
    kind: Kind,
    lo: int,
    hi: int,
    *,
    max_entries: int = DEFAULT_MAX_ENTRIES,
    segment_size: int = _SEGMENT,
) -> ArithmeticTable:
    """Sieve an ArithmeticTable for n in [lo, hi).

    The base and Mobius kinds run segment by segment, so only segment_size
    entries are live at a time and the output is identical for any
    segmentation. tau_k runs its convolution passes over [1, hi) and
    slices, because divisor convolution is not a local operation; its
    memory budget is therefore checked against hi rather than hi - lo.
    """
    if not 1 <= lo < hi:
        raise DomainError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    footprint = hi if kind.name == "tau" else hi - lo
    if footprint > max_entries:
        raise BudgetExceededError(
            f"sieve of {kind.label} over [{lo}, {hi}) needs {footprint} entries, "
            f"budget is {max_entries}"
        )
    if kind.name == "tau":
        return ArithmeticTable(kind, lo, hi, _tau_values(hi, kind.k)[lo:hi])
    primes = primes_upto(math.isqrt(hi - 1))
    seg_fn = _base_segment if kind.name == "lambda" else _mu_segment
    parts = []
    for s in range(lo, hi, segment_size):
        e = min(hi, s + segment_size)
        parts.append(seg_fn(s, e, primes))
    return ArithmeticTable(kind, lo, hi, np.concatenate(parts))


def point_value(kind: Kind, n: int) -> int:
    """Single value by factorization: the prime base for lambda, mu(n), or
    tau_k(n) via multiplicativity with tau_k(p**a) = C(a + k - 1, k - 1)."""
    if n < 1:
        raise DomainError("point_value needs n >= 1")
    if kind.name == "lambda":
        return prime_power_base(n)
    pairs = factor_pairs(n)
    if kind.name == "mu":
        if any(e > 1 for _, e in pairs):
            return 0
        return -1 if len(pairs) % 2 else 1
    k = kind.k
    out = 1
    for _, e in pairs:
        out *= math.comb(e + k - 1, k - 1)
    return out
