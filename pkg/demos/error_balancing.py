#!/usr/bin/env python3
"""Balancing competing error exponents exactly.

An error term of the shape x^(7/15+r) + x^(11/24+7w/12) + x^(1/2-w-r) is
minimized where the exponents equalize. The solver enumerates every
candidate vertex of the min-max program over the box and certifies the
optimum by exact comparison, so the output is a Fraction, not a float
that happens to look right.
"""

from fractions import Fraction as F

from floorsum import evaluate_at, minimize_max, parse_form

BOX = {"r": (F(0), F(1)), "w": (F(0), F(1))}

print("main balance: forms 7/15+r, 11/24+(7/12)w, 1/2-w-r")
forms = [parse_form("7/15 + r"), parse_form("11/24 + (7/12)w"), parse_form("1/2 - w - r")]
sol = minimize_max(forms, ["r", "w"], BOX)
print(f"  optimum at r = {sol.assignment['r']}, w = {sol.assignment['w']}")
print(f"  value = {sol.value} = 7/15 + {sol.value - F(7, 15)}  (~{float(sol.value):.5f})")
print(f"  active forms: {len(sol.active)} of 3 (all tight)")
values, _ = evaluate_at(forms, sol.assignment)
for label, v in values.items():
    print(f"    {label:<18} = {v}")

print()
print("variant balance: first form becomes 7/15 + (32/45)r")
forms = [parse_form("7/15 + (32/45)r"), parse_form("11/24 + (7/12)w"), parse_form("1/2 - w - r")]
sol = minimize_max(forms, ["r", "w"], BOX)
print(f"  optimum at r = {sol.assignment['r']}, w = {sol.assignment['w']}")
print(f"  value = {sol.value} = 7/15 + {sol.value - F(7, 15)}  (~{float(sol.value):.5f})")
print(f"  note: the computed w = {sol.assignment['w']} (~{float(sol.assignment['w']):.4f});")
print("  a printed value of 205/923 (~0.2221) circulates for this balance, which is")
print("  exactly 10x the computed optimum and does not equalize the three forms:")
values, top = evaluate_at(forms, {"r": F(6, 923), "w": F(205, 923)})
for label, v in values.items():
    print(f"    {label:<18} = {v} (~{float(v):.5f})")
print(f"  max at the printed point = {top} (~{float(top):.5f}) > {float(sol.value):.5f}")

print()
print("sanity: zero assignment gives max 1/2 (the third form dominates):")
_, top = evaluate_at(forms, {"r": F(0), "w": F(0)})
print(f"  max = {top}")
