#!/usr/bin/env python3
"""The type I / type II decomposition of von Mangoldt sums, checked as an
identity rather than taken on faith.

T1 - T2 + T3 must reproduce sum Lambda(d) g(d) over (D, 2D] for any
bounded g: the pieces reshuffle the same arithmetic, they do not estimate
it. The payoff elsewhere is that T1/T2 have one long smooth variable and
T3 is bilinear with both factors in (D^(1/3), 2D/D^(1/3)); here we verify
the bookkeeping numerically and look at the coefficient sizes.
"""

import numpy as np

from floorsum import coefficient_bounds_report, decompose

rng = np.random.default_rng(0)

print(f"{'D':>8} {'U':>4} {'g':>8} {'|T1|':>12} {'|T2|':>12} {'|T3|':>12} {'rel err':>10}")
for D in (200, 1000, 10**4, 10**5):
    for label in ("unit", "phase", "random"):
        if label == "unit":
            g = np.ones(D, dtype=np.complex128)
        elif label == "phase":
            d = np.arange(D + 1, 2 * D + 1, dtype=np.float64)
            g = np.exp(2j * np.pi * (10**6 / d))
        else:
            g = np.exp(2j * np.pi * rng.random(D))
        dec = decompose(D, g)
        print(f"{D:>8} {dec.U:>4} {label:>8} {abs(dec.t1):>12.3f} {abs(dec.t2):>12.3f} "
              f"{abs(dec.t3):>12.3f} {dec.rel_err:>10.2e}")

print()
print("coefficient sizes (both ratios are bounded by 1, attained at primes):")
for D in (10**3, 10**4):
    rep = coefficient_bounds_report(D)
    print(f"  D = {D}: max |c(m)|/log m = {rep.max_c_ratio:.12f} over m <= {rep.U**2}, "
          f"max w(k)/log k = {rep.max_w_ratio:.12f}")

print()
print("variable upper limit (partial summation introduces D1 in (D, 2D]):")
for D1 in (1300, 1700, 2000):
    g = np.exp(2j * np.pi * rng.random(D1 - 1000))
    dec = decompose(1000, g, D1=D1)
    print(f"  D=1000, D1={D1}: rel err {dec.rel_err:.2e}")
