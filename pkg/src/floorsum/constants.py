"""Certified brackets for the linear coefficients C_f = sum_{n>=1} f(n)/(n(n+1)).

A bracket [lo, hi] is an honest enclosure of the true constant: the
partial sum is widened outward by an explicit float rounding allowance,
and the tail gets a computable upper bound.

Von Mangoldt tail: every term is at most log n / n**2, whose integrand
decreases for n >= 2, so

    sum_{n > N} log n / n**2  <=  (log N + 1)/N + log(N + 1)/(N + 1)**2

(the integral from N plus one guard term). Divisor tail: the Dirichlet
series identity sum_n tau_k(n)/n**2 = zeta(2)**k gives the exact
remainder

    sum_{n > N} tau_k(n)/(n(n+1)) <= sum_{n > N} tau_k(n)/n**2
                                   = zeta(2)**k - sum_{n <= N} tau_k(n)/n**2,

which needs no implied constants at all. All bracket arithmetic is
widened by a small multiple of machine epsilon per operation, so the
enclosure property is literally true for the float endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .primes import primes_upto
from .sieve import Kind, sieve_table, tau as tau_kind

_EPS = float(np.finfo(np.float64).eps)
# Covers per-term evaluation (a handful of roundings each) plus the
# pairwise chunk reduction; generous by an order of magnitude.
_PAD_REL = 64.0 * _EPS

_SEGMENT = 1 << 22


@dataclass(frozen=True)
class ConstantBracket:
    """kind, number of partial-sum terms, and the enclosure [lo, hi]."""

    kind: Kind
    terms_used: int
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def _combine(parts: list[float], order: str) -> float:
    if order == "ascending":
        return math.fsum(parts)
    if order == "blockwise":
        # coarser tree: fold pairs first, then fsum the survivors
        folded = [sum(parts[i : i + 2]) for i in range(0, len(parts), 2)]
        return math.fsum(folded)
    raise DomainError(f"unknown evaluation order {order!r}")


def _lambda_partial(n_terms: int, order: str) -> float:
    """sum_{n <= N} Lambda(n)/(n(n+1)) with a deterministic reduction.

    Only prime powers contribute; primes are enumerated segment by
    segment, squares and higher powers separately (there are O(sqrt N)
    of them).
    """
    base = primes_upto(math.isqrt(n_terms))
    parts = []
    for s in range(2, n_terms + 1, _SEGMENT):
        e = min(n_terms, s + _SEGMENT - 1)
        mark = np.ones(e - s + 1, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((s + p - 1) // p) * p)
            if start <= e:
                mark[start - s :: p] = False
        if s <= 1:
            mark[: 2 - s] = False
        ps = (np.flatnonzero(mark) + s).astype(np.float64)
        parts.append(float(np.sum(np.log(ps) / (ps * (ps + 1.0)))))
    power_terms = []
    for p in base:
        p = int(p)
        pk = p * p
        while pk <= n_terms:
            power_terms.append(math.log(p) / (pk * (pk + 1)))
            pk *= p
    parts.append(math.fsum(power_terms))
    return _combine(parts, order)


def _tau_sums(k: int, n_terms: int, order: str) -> tuple[float, float]:
    """Partial sums of tau_k(n)/(n(n+1)) and tau_k(n)/n**2 up to n_terms."""
    table = sieve_table(tau_kind(k), 1, n_terms + 1)
    parts_main, parts_sq = [], []
    for s in range(1, n_terms + 1, _SEGMENT):
        e = min(n_terms, s + _SEGMENT - 1)
        v = table.values[s - 1 : e].astype(np.float64)
        n = np.arange(s, e + 1, dtype=np.float64)
        parts_main.append(float(np.sum(v / (n * (n + 1.0)))))
        parts_sq.append(float(np.sum(v / (n * n))))
    return _combine(parts_main, order), _combine(parts_sq, order)


def _zeta2_power(k: int) -> tuple[float, float]:
    """Directed bracket for zeta(2)**k = (pi**2 / 6)**k."""
    z = math.pi * math.pi / 6.0
    val = z**k
    pad = (3 + k) * _EPS * val
    return val - pad, val + pad


def main_constant(kind: Kind, n_terms: int, *, order: str = "ascending") -> ConstantBracket:
    """Bracket for C_f with n_terms partial-sum terms.

    order selects the reduction tree ("ascending" or "blockwise"); any
    order yields a valid bracket, and brackets from different orders must
    overlap.
    """
    if n_terms < 10:
        raise DomainError("main_constant needs at least 10 terms")
    if kind.name == "lambda":
        partial = _lambda_partial(n_terms, order)
        pad = _PAD_REL * partial
        n = float(n_terms)
        tail = (math.log(n) + 1.0) / n + math.log(n + 1.0) / ((n + 1.0) * (n + 1.0))
        tail = tail * (1.0 + 8.0 * _EPS)
        return ConstantBracket(kind, n_terms, partial - pad, partial + pad + tail)
    if kind.name == "tau":
        partial, partial_sq = _tau_sums(kind.k, n_terms, order)
        pad = _PAD_REL * partial
        pad_sq = _PAD_REL * partial_sq
        _, z_hi = _zeta2_power(kind.k)
        tail = z_hi - (partial_sq - pad_sq)
        return ConstantBracket(kind, n_terms, partial - pad, partial + pad + tail)
    raise DomainError(f"no main-term constant for kind {kind.label}")
