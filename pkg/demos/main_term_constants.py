#!/usr/bin/env python3
"""Certified brackets for the linear coefficients C_f = sum f(n)/(n(n+1)).

The von Mangoldt tail is bounded by the integral of log t / t^2; the
divisor tails need no integral at all because sum tau_k(n)/n^2 = zeta(2)^k
exactly, so the remainder is a computable difference. Brackets must nest
as the partial sum grows and must always contain the midpoints of finer
brackets.
"""

import math

from floorsum import LAMBDA, main_constant, tau

print("bracket ladders (lo, hi, width):")
for kind in (LAMBDA, tau(2), tau(3)):
    print(f"  {kind.label}:")
    prev = None
    for exp in range(2, 8):
        b = main_constant(kind, 10**exp)
        print(f"    N = 1e{exp}: [{b.lo:.10f}, {b.hi:.10f}]  width {b.width:.3e}")
        if prev is not None:
            assert b.lo >= prev.lo and b.hi <= prev.hi
        prev = b

print()
print("zeta(2)^k cross-check (partial square sums approach from below):")
for k in (2, 3):
    target = (math.pi**2 / 6) ** k
    row = []
    for exp in (3, 5, 7):
        b = main_constant(tau(k), 10**exp)
        row.append(target - b.width)   # the implied partial square sum
    print(f"  k={k}: {row[0]:.6f} -> {row[1]:.6f} -> {row[2]:.6f} vs zeta(2)^{k} = {target:.6f}")

print()
b = main_constant(LAMBDA, 10**8)
print(f"lambda constant at N = 1e8: width {b.width:.3e} (tail bound (log N + 1)/N dominated)")
print(f"both evaluation orders overlap: ", end="")
a = main_constant(LAMBDA, 10**6, order="ascending")
c = main_constant(LAMBDA, 10**6, order="blockwise")
print(f"[{max(a.lo, c.lo):.12f}, {min(a.hi, c.hi):.12f}] nonempty")
