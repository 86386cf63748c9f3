"""Evaluation of floor-quotient sums S_f(x) = sum_{n <= x} f(floor(x/n)).

Three routes are implemented and cross-checked:

* sum_direct enumerates every n from 1 to x (in fixed-size chunks) and
  adds the point value at each quotient;
* sum_blocked walks the O(sqrt x) maximal intervals on which floor(x/n)
  is constant, with interval bounds computed arithmetically;
* sum_dual splits the range at a threshold N and rewrites the tail over
  quotient values d, where the interval count floor(x/d) - floor(x/(d+1))
  equals x/d - x/(d+1) - psi(x/d) + psi(x/(d+1)) for the sawtooth psi.
  Both the counting form and the sawtooth form of the tail are computed
  in exact rational arithmetic and their difference is reported.

The split threshold follows one fixed boundary rule: n belongs to the
tail iff n > N, and the tail enumerates exactly the quotient values
d = floor(x/n) attained by those n. The block whose n-interval straddles
N is clipped at N (its sawtooth form uses floor(x/d) = x/d - psi(x/d) -
1/2 against the exact lower limit N).

Divisor-kind sums are exact integers; von Mangoldt sums accumulate
count * log(base) contributions through a compensated reduction.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .constants import ConstantBracket
from .errors import BracketTooWideError, BudgetExceededError, DomainError
from .sieve import Kind, point_value
from .summation import compensated_sum

DEFAULT_MAX_TERMS = 10**9
_CHUNK = 1 << 22


class Block(NamedTuple):
    q: int
    n_lo: int
    n_hi: int


@dataclass(frozen=True)
class BlockDecomposition:
    """Partition of [1, x] into maximal intervals of constant floor(x/n)."""

    x: int
    blocks: tuple[Block, ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class SplitSum:
    """S_f(x) split at N: s1 over n <= N, s2 over N < n <= x."""

    x: int
    N: int
    s1: float | int
    s2: float | int
    total: float | int
    # max over tail quotients of |count_form - sawtooth_form|, exact; the
    # dual identity holds iff this is 0.
    psi_form_discrepancy: Fraction


@dataclass(frozen=True)
class ErrorSeries:
    """E(x) = S_f(x) - C_f * x over a grid, with the bracket on C_f kept
    so every row can be re-derived and the uncertainty propagated."""

    kind: Kind
    bracket: ConstantBracket
    xs: tuple[int, ...]
    sums: tuple[float, ...]
    errors: tuple[float, ...]
    errors_lo: tuple[float, ...]
    errors_hi: tuple[float, ...]

    def csv_rows(self) -> Iterator[str]:
        yield "x,S,E,C_lo,C_hi"
        for x, s, e in zip(self.xs, self.sums, self.errors):
            yield f"{x},{s!r},{e!r},{self.bracket.lo!r},{self.bracket.hi!r}"


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float
    points_used: int
    points_excluded: int


def distinct_quotients(x: int) -> BlockDecomposition:
    """All maximal blocks (q, n_lo, n_hi) with floor(x/n) = q on [n_lo, n_hi]."""
    if x < 1:
        raise DomainError("distinct_quotients needs x >= 1")
    blocks = []
    n = 1
    while n <= x:
        q = x // n
        n_hi = x // q
        blocks.append(Block(q, n, n_hi))
        n = n_hi + 1
    return BlockDecomposition(x, tuple(blocks))


def psi(t):
    """Sawtooth t - floor(t) - 1/2, equal to -1/2 at integers.

    Rational input (int or Fraction) gives an exact Fraction back; floats
    stay floats.
    """
    if isinstance(t, (int, Fraction)):
        f = Fraction(t)
        return f - (f.numerator // f.denominator) - Fraction(1, 2)
    t = float(t)
    return t - math.floor(t) - 0.5


def _check_sum_kind(kind: Kind) -> None:
    if kind.name not in ("lambda", "tau"):
        raise DomainError(f"floor-quotient sums take lambda or tau kinds, not {kind.label}")


def _quotient_runs(x: int, n_max: int, chunk: int) -> Iterator[tuple[int, int]]:
    """(q, count) for the maximal runs of q = floor(x/n), n = 1..n_max,
    found by enumerating every n. Runs split by chunk borders are merged,
    so the output does not depend on the chunk size."""
    carry_q = -1
    carry_c = 0
    for lo in range(1, n_max + 1, chunk):
        hi = min(n_max, lo + chunk - 1)
        q = x // np.arange(lo, hi + 1, dtype=np.int64)
        cuts = np.flatnonzero(q[:-1] != q[1:]) + 1
        starts = np.concatenate(([0], cuts))
        ends = np.concatenate((cuts, [q.size]))
        for s, e in zip(starts, ends):
            qv = int(q[s])
            cnt = int(e - s)
            if qv == carry_q:
                carry_c += cnt
            else:
                if carry_q >= 0:
                    yield carry_q, carry_c
                carry_q, carry_c = qv, cnt
    if carry_q >= 0:
        yield carry_q, carry_c


def _reduce_weighted(kind: Kind, pairs: Sequence[tuple[int, int]]):
    """sum of f(q) * count over (q, count) pairs, in the given order."""
    if kind.name == "tau":
        total = 0
        for q, cnt in pairs:
            total += point_value(kind, q) * cnt
        return total
    contribs = []
    for q, cnt in pairs:
        b = point_value(kind, q)
        if b > 1:
            contribs.append(cnt * math.log(b))
    return compensated_sum(np.array(contribs, dtype=np.float64))


def sum_direct(kind: Kind, x: int, *, max_terms: int = DEFAULT_MAX_TERMS, chunk: int = _CHUNK):
    """S_f(x) by the literal loop over n = 1..x.

    Exact integer for tau kinds. For lambda the per-run contributions
    count * log(base) go through a compensated reduction whose error is
    far below 1e-10 * terms * max|term|.
    """
    _check_sum_kind(kind)
    if x < 1:
        raise DomainError("sum_direct needs x >= 1")
    if x > max_terms:
        raise BudgetExceededError(f"direct sum over {x} terms exceeds budget {max_terms}")
    return _reduce_weighted(kind, list(_quotient_runs(x, x, chunk)))


def sum_blocked(kind: Kind, x: int, *, threads: int = 1):
    """S_f(x) over the block decomposition: sum of f(q) * block length.

    With threads > 1 the per-block point values are computed by a thread
    pool, but contributions are always reduced in block order, so the
    result is bit-identical for every thread count.
    """
    _check_sum_kind(kind)
    blocks = distinct_quotients(x).blocks
    pairs = [(b.q, b.n_hi - b.n_lo + 1) for b in blocks]
    if threads > 1:
        qs = [q for q, _ in pairs]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(lambda q: point_value(kind, q), qs, chunksize=256))
        if kind.name == "tau":
            return sum(v * c for v, (_, c) in zip(vals, pairs))
        contribs = [c * math.log(v) for v, (_, c) in zip(vals, pairs) if v > 1]
        return compensated_sum(np.array(contribs, dtype=np.float64))
    return _reduce_weighted(kind, pairs)


def sum_dual(kind: Kind, x: int, N: int, *, chunk: int = _CHUNK) -> SplitSum:
    """S_f(x) as s1 (n <= N, direct) plus s2 (tail over quotient values).

    The tail count for quotient d is computed both by interval arithmetic
    and through the sawtooth expansion; the two are compared exactly in
    rational arithmetic and the largest absolute difference is reported
    (it must be 0).
    """
    _check_sum_kind(kind)
    if x < 1:
        raise DomainError("sum_dual needs x >= 1")
    if not 1 <= N <= x:
        raise DomainError(f"split point N={N} must lie in [1, {x}]")
    s1 = _reduce_weighted(kind, list(_quotient_runs(x, N, chunk)))
    half = Fraction(1, 2)
    tail_pairs: list[tuple[int, int]] = []
    discrepancy = Fraction(0)
    for q, n_lo, n_hi in distinct_quotients(x).blocks:
        if n_hi <= N:
            continue
        count = n_hi - max(n_lo - 1, N)
        if n_lo > N:
            count_psi = (
                Fraction(x, q) - Fraction(x, q + 1) - psi(Fraction(x, q)) + psi(Fraction(x, q + 1))
            )
        else:
            count_psi = Fraction(x, q) - psi(Fraction(x, q)) - half - N
        discrepancy = max(discrepancy, abs(count_psi - count))
        tail_pairs.append((q, count))
    s2 = _reduce_weighted(kind, tail_pairs)
    return SplitSum(x, N, s1, s2, s1 + s2, discrepancy)


def geometric_grid(lo: int = 10**4, hi: int = 10**8, ratio: int = 2) -> list[int]:
    """lo, lo*ratio, lo*ratio**2, ... capped at hi, with hi always included."""
    if lo < 1 or hi < lo or ratio < 2:
        raise DomainError("need 1 <= lo <= hi and ratio >= 2")
    xs = []
    v = lo
    while v <= hi:
        xs.append(v)
        v *= ratio
    if xs[-1] != hi:
        xs.append(hi)
    return xs


def error_series(
    kind: Kind,
    bracket: ConstantBracket,
    xs: Sequence[int],
    *,
    method: str = "blocked",
    resolution: float | None = None,
    threads: int = 1,
) -> ErrorSeries:
    """Tabulate E(x) = S_f(x) - C_f * x over xs with the constant bracket
    propagated: errors_lo/errors_hi use the bracket endpoints, errors the
    midpoint.

    When a resolution is requested, a bracket too wide to resolve it at
    max(xs) raises BracketTooWideError instead of silently proceeding.
    """
    xs = list(xs)
    if any(b >= a for a, b in zip(xs[1:], xs)):
        raise DomainError("xs must be strictly increasing")
    if xs and resolution is not None:
        spread = bracket.width * max(xs)
        if spread > resolution:
            raise BracketTooWideError(
                f"bracket width {bracket.width!r} spans {spread!r} at x={max(xs)}, "
                f"above the requested resolution {resolution!r}"
            )
    if method == "blocked":
        evaluate = lambda x: sum_blocked(kind, x, threads=threads)
    elif method == "direct":
        evaluate = lambda x: sum_direct(kind, x)
    else:
        raise DomainError(f"unknown method {method!r}")
    mid = bracket.midpoint
    sums, errs, errs_lo, errs_hi = [], [], [], []
    for x in xs:
        s = float(evaluate(x))
        sums.append(s)
        errs.append(s - mid * x)
        errs_lo.append(s - bracket.hi * x)
        errs_hi.append(s - bracket.lo * x)
    return ErrorSeries(kind, bracket, tuple(xs), tuple(sums), tuple(errs), tuple(errs_lo), tuple(errs_hi))


def fit_exponent(series: ErrorSeries) -> FitResult:
    """Least-squares line through (log x, log |E(x)|).

    Points with |E| < 1 would put log|E| on the wrong side of zero for a
    growth fit, so they are excluded and counted.
    """
    usable = [(x, abs(e)) for x, e in zip(series.xs, series.errors) if abs(e) >= 1.0]
    excluded = len(series.xs) - len(usable)
    if len(usable) < 3:
        raise DomainError(f"need at least 3 points with |E| >= 1, have {len(usable)}")
    lx = np.log([x for x, _ in usable])
    le = np.log([e for _, e in usable])
    slope, intercept = np.polyfit(lx, le, 1)
    resid = le - (slope * lx + intercept)
    return FitResult(
        float(slope),
        float(intercept),
        float(np.sqrt(np.mean(resid**2))),
        len(usable),
        excluded,
    )
