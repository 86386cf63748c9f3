#!/usr/bin/env python3
"""Exact exponent-pair algebra: the A/B processes, a word evaluation, and
the bound formulas the pairs feed.

Everything is a Fraction; nothing is rounded until a bound formula
materializes a float. The showpiece identity:

    BA^5 (13/84, 55/84) = (1653/3494, 1760/3494)
"""

from fractions import Fraction as F

from floorsum import (
    a_process,
    b_process,
    eval_former_bound,
    eval_lwy_bound,
    eval_rs_bound,
    eval_vdc_bound,
    eval_word,
    pair,
)

base = pair(F(13, 84), F(55, 84))
print("walking A five times from (13/84, 55/84):")
p = base
for step in range(1, 6):
    p = a_process(p)
    print(f"  A^{step}: ({p.kappa}, {p.lambda_})")
p = b_process(p)
print(f"  B:   ({p.kappa}, {p.lambda_})")

target = eval_word("BA^5", base)
print(f"eval_word('BA^5'): ({target.kappa}, {target.lambda_})")
assert target.as_tuple() == p.as_tuple() == (F(1653, 3494), F(1760, 3494))
print("matches (1653/3494, 1760/3494) exactly")

print()
print("classical seeds and fixed points:")
print("  B(0, 1) =", b_process(pair(0, 1)).as_tuple(), " (the van der Corput pair)")
print("  A(0, 1) =", a_process(pair(0, 1)).as_tuple(), " (trivial pair is an A fixed point)")
print("  B(B(p)) == p:", b_process(b_process(base)).as_tuple() == base.as_tuple())

print()
print("bound formulas at concrete ranges (epsilon factors excluded):")
vdc = eval_vdc_bound(pair(F(1, 2), F(1, 2)), 100.0, 100.0)
print(f"  single-sum bound, Y=X=100, pair (1/2,1/2): {vdc.value:.4f} = "
      + " + ".join(f"{v:.4f}" for _, v in vdc.addends))
lwy = eval_lwy_bound(pair(F(1, 2), F(1, 2)), 1e6, 10, 100, 100)
print(f"  bilinear triple bound, X=1e6, (H,M,N)=(10,100,100): {lwy.value:.1f}")
for name, v in lwy.addends:
    print(f"      {name:<42} {v:>14.2f}")
rs = eval_rs_bound(1e4, 10, 10, 10)
print(f"  fourth-moment bound, X=1e4, (H,M,N)=(10,10,10): {rs.value:.2f}")
former = eval_former_bound(2**12, 2**6)
print(f"  block bound (x^2 D^7)^(1/12) at x=2^12, D=2^6: {former.value:.4f} = 2^5.5, "
      f"domain_ok={former.domain_ok}")
former = eval_former_bound(2**13, 2**5)
print(f"  same at D below x^(6/13): domain_ok={former.domain_ok} (flagged, not rejected)")
