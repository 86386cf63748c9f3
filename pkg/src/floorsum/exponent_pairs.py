"""Exact-rational exponent-pair algebra and the bound formulas it feeds.

An exponent pair (kappa, lambda) satisfies 0 <= kappa <= 1/2 <= lambda <= 1.
New pairs come from the two classical processes

    A: (kappa, lambda) -> (kappa/(2 kappa + 2), 1/2 + lambda/(2 kappa + 2))
    B: (kappa, lambda) -> (lambda - 1/2, kappa + 1/2)

and words like "BA^5" are evaluated right to left in exact rational
arithmetic. The eval_* functions plug concrete ranges into the bound
formulas used alongside the pairs; each returns its named addends so an
independent high-precision path can recompute them term by term.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

_HALF = Fraction(1, 2)
_WORD_TOKEN = re.compile(r"([AB])(?:\^(\d+))?")


@dataclass(frozen=True)
class ExponentPair:
    kappa: Fraction
    lambda_: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.kappa, Fraction) or not isinstance(self.lambda_, Fraction):
            object.__setattr__(self, "kappa", Fraction(self.kappa))
            object.__setattr__(self, "lambda_", Fraction(self.lambda_))
        if not (0 <= self.kappa <= _HALF <= self.lambda_ <= 1):
            raise DomainError(
                f"({self.kappa}, {self.lambda_}) violates 0 <= kappa <= 1/2 <= lambda <= 1"
            )

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.kappa, self.lambda_)


@dataclass(frozen=True)
class BoundEvaluation:
    """A bound formula instantiated at concrete ranges: the named
    nonnegative addends and their sum. Epsilon factors and implied
    constants are never included."""

    lemma: str
    inputs: dict[str, float]
    pair: ExponentPair | None
    addends: tuple[tuple[str, float], ...]
    value: float
    domain_ok: bool = True
    note: str = "epsilon factor and implied constant excluded"


def pair(kappa, lambda_) -> ExponentPair:
    return ExponentPair(Fraction(kappa), Fraction(lambda_))


def a_process(p: ExponentPair) -> ExponentPair:
    den = 2 * p.kappa + 2
    return ExponentPair(p.kappa / den, _HALF + p.lambda_ / den)


def b_process(p: ExponentPair) -> ExponentPair:
    return ExponentPair(p.lambda_ - _HALF, p.kappa + _HALF)


def eval_word(word: str, base: ExponentPair) -> ExponentPair:
    """Apply a word of A/B steps (with optional ^powers) right to left,
    so "BA^5" means five A steps followed by one B step."""
    stripped = word.strip()
    tokens = []
    pos = 0
    while pos < len(stripped):
        m = _WORD_TOKEN.match(stripped, pos)
        if m is None:
            raise DomainError(f"malformed exponent-pair word {word!r} at position {pos}")
        tokens.append((m.group(1), int(m.group(2) or 1)))
        pos = m.end()
    current = base
    for letter, power in reversed(tokens):
        step = a_process if letter == "A" else b_process
        for _ in range(power):
            current = step(current)
    return current


def _positive(name: str, value: float) -> float:
    value = float(value)
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def eval_vdc_bound(p: ExponentPair, Y, X) -> BoundEvaluation:
    """Single-sum bound Y**kappa X**lambda + 1/Y for a phase of derivative
    size Y on a range of length X."""
    Y = _positive("Y", Y)
    X = _positive("X", X)
    if X <= 1:
        raise DomainError("eval_vdc_bound needs X > 1")
    k, l = float(p.kappa), float(p.lambda_)
    main = math.exp(k * math.log(Y) + l * math.log(X))
    addends = (("Y^kappa X^lambda", main), ("1/Y", 1.0 / Y))
    return BoundEvaluation("VDC", {"Y": Y, "X": X}, p, addends, sum(a for _, a in addends))


def eval_lwy_bound(p: ExponentPair, X, H, M, N) -> BoundEvaluation:
    """Triple-sum bilinear bound
    (X**kappa H**(2+kappa) M**(1+kappa+lambda) N**(2+kappa))**(1/(2+2kappa))
    + H M**(1/2) N + H**(1/2) M N**(1/2) + X**(-1/2) H M N."""
    X = _positive("X", X)
    H, M, N = (_positive(n, v) for n, v in zip("HMN", (H, M, N)))
    if min(H, M, N) < 1:
        raise DomainError("eval_lwy_bound needs H, M, N >= 1")
    k, l = float(p.kappa), float(p.lambda_)
    lX, lH, lM, lN = (math.log(v) for v in (X, H, M, N))
    main = math.exp((k * lX + (2 + k) * lH + (1 + k + l) * lM + (2 + k) * lN) / (2 + 2 * k))
    addends = (
        ("(X^k H^(2+k) M^(1+k+l) N^(2+k))^(1/(2+2k))", main),
        ("H M^(1/2) N", H * math.sqrt(M) * N),
        ("H^(1/2) M N^(1/2)", math.sqrt(H) * M * math.sqrt(N)),
        ("X^(-1/2) H M N", H * M * N / math.sqrt(X)),
    )
    inputs = {"X": X, "H": H, "M": M, "N": N}
    return BoundEvaluation("LWY", inputs, p, addends, sum(a for _, a in addends))


def eval_rs_bound(X, H, M, N) -> BoundEvaluation:
    """Triple-sum fourth-moment bound
    (X M**2 N**3 H**3)**(1/4) + M (H N)**(3/4) + M**(1/2) H N + X**(-1/2) H N M."""
    X = _positive("X", X)
    H, M, N = (_positive(n, v) for n, v in zip("HMN", (H, M, N)))
    if min(H, M, N) < 1:
        raise DomainError("eval_rs_bound needs H, M, N >= 1")
    addends = (
        ("(X M^2 N^3 H^3)^(1/4)", (X * M * M * N**3 * H**3) ** 0.25),
        ("M (H N)^(3/4)", M * (H * N) ** 0.75),
        ("M^(1/2) H N", math.sqrt(M) * H * N),
        ("X^(-1/2) H N M", H * N * M / math.sqrt(X)),
    )
    inputs = {"X": X, "H": H, "M": M, "N": N}
    return BoundEvaluation("RS", inputs, None, addends, sum(a for _, a in addends))


def _former_domain_ok(x, D) -> bool:
    # x**(6/13) <= D <= x**(2/3); exact integer comparison when possible
    if isinstance(x, int) and isinstance(D, int):
        return D**13 >= x**6 and D**3 <= x**2
    return 13 * math.log(D) >= 6 * math.log(x) and 3 * math.log(D) <= 2 * math.log(x)


def eval_former_bound(x, D) -> BoundEvaluation:
    """Prior floor-quotient block bound (x**2 D**7)**(1/12); valid for D
    between x**(6/13) and x**(2/3), flagged (not rejected) outside."""
    xf = _positive("x", x)
    Df = _positive("D", D)
    if xf <= 1:
        raise DomainError("eval_former_bound needs x > 1")
    value = math.exp((2 * math.log(xf) + 7 * math.log(Df)) / 12)
    return BoundEvaluation(
        "FORMER",
        {"x": xf, "D": Df},
        None,
        (("(x^2 D^7)^(1/12)", value),),
        value,
        domain_ok=_former_domain_ok(x, D),
    )
