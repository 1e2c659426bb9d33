#!/usr/bin/env python3
"""The planar picture: which moment orders admit counterexamples, and from
which family.

Two families cover every order k >= 3: the triangle with an edge-midpoint
vertex handles 3 <= k <= 10 with exact ratios below 1, and the half-disk with
a base-center vertex handles k >= 11 through the q(2,k) bound, which decreases
strictly from k = 4 and drops below 1 at k = 11.  At k = 1 and 2 both families
fail to produce a counterexample (the k = 2 ratio is exactly 1).
"""

from fractions import Fraction

import sylvester as sy

print("Triangle family, exact table (unit area):")
print(f"{'k':>3} {'midpoint moment':>18} {'free moment':>18} {'ratio':>16} {'~':>10}")
for row in sy.table1_rows():
    dec = sy.PiPolynomial.from_rational(row.ratio).to_decimal(6)
    print(f"{row.k:>3} {str(row.midpoint_moment):>18} {str(row.free_moment):>18} "
          f"{str(row.ratio):>16} {dec:>10}")

print()
print("Half-disk family, q(2,k) scan:")
for k in list(range(1, 16)) + [20, 50]:
    q = sy.q_ratio(2, k)
    flag = "< 1  (counterexample)" if q < 1 else ">= 1"
    print(f"  k={k:>3}: q = {float(q):>9.5f}  {flag}")

print()
print("Verdict per order, combining both families:")
for k in (1, 2, 3, 7, 10, 11, 12, 40):
    r = sy.plane_counterexample_report(k)
    print(f"  k={k:>3}: family={r.family:<9} counterexample={r.counterexample}")
    print(f"          {r.note}")

print()
print("Dimension three, for contrast: the q(3,k) bound certifies order k >= 4,")
print("and the exact four-kappa ratio bound handles k = 2 and 3 directly:")
for k in (2, 3, 4):
    if k >= 2:
        bound = sy.exact_ratio_bound(3, k)
        print(f"  k={k}: ratio bound = {bound} ~ {bound.to_decimal(6)}"
              + ("  (equals 1 exactly)" if bound == 1 else "  (< 1)" if bound < 1 else ""))
print("  q(3,4) =", float(sy.q_ratio(3, 4)), "< 1")
