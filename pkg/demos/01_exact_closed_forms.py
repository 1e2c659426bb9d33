#!/usr/bin/env python3
"""Tour of the exact closed-form moments.

Every value below is computed in exact arithmetic over rational multiples of
half-integer powers of pi; decimals are certified truncations (every printed
digit is a true digit of the value).
"""

from fractions import Fraction

import sylvester as sy

print("=" * 72)
print("Ball volumes and sphere areas (the kappa/omega ladder)")
print("=" * 72)
for d in range(1, 8):
    kd = sy.kappa(d)
    print(f"  kappa({d}) = {str(kd):>14}   ~ {kd.to_decimal(8)}")
print("  omega(4) =", sy.omega(4), " (= 4 * kappa(4))")
print("  kappa(12)/kappa(10) =", sy.kappa(12) / sy.kappa(10), " (= 2*pi/12)")

print()
print("=" * 72)
print("Distance moments on an interval: E|X-Y|^k = 2 l^k / ((k+1)(k+2))")
print("=" * 72)
for k in range(0, 5):
    m = sy.interval_moment(k, 1)
    print(f"  k={k}: {str(m):>6}  ~ {m.to_decimal(6)}")

print()
print("=" * 72)
print("Random simplices in the unit ball (all vertices random, then one")
print("vertex pinned at the center)")
print("=" * 72)
for d in (1, 2, 3):
    free = sy.ball_moment(d, 1)
    pinned = sy.ball_fixed_moment(d, 1)
    print(f"  d={d}: free = {str(free):>12} ~ {free.to_decimal(6)}   "
          f"center-pinned = {str(pinned):>12} ~ {pinned.to_decimal(6)}")

print()
print("The famous headline constant: a random simplex in the 3-half-ball with")
print("one vertex at the center of the flat base has expected volume")
v = sy.halfball_fixed_moment(3, 1)
print(f"    E V = {v} ~ {v.to_decimal(8)}")
print("identical (by a reflection argument) to the center-pinned full ball:")
print("    halfball_fixed_moment(3,1) == ball_fixed_moment(3,1):",
      sy.halfball_fixed_moment(3, 1) == sy.ball_fixed_moment(3, 1))

print()
print("=" * 72)
print("Triangles of unit area: free moments vs. edge-midpoint-pinned moments")
print("=" * 72)
for k in (1, 2, 3, 4):
    free = sy.triangle_moment(k)
    mid = sy.triangle_midpoint_moment(k)
    ratio = sy.tx_over_t_ratio(k)
    print(f"  k={k}: free = {str(free):>10}  midpoint = {str(mid):>10}  "
          f"ratio = {ratio}")
print("  note the exact coincidence at k=2, and the crossing below 1 at k=3")

print()
print("Expected volume of a random tetrahedron in a unit-volume tetrahedron:")
t = sy.tetrahedron_moment_k1()
print(f"    E V = {t} ~ {t.to_decimal(8)}")

print()
print("Serialization: every exact value round-trips through a JSON schema")
print("   ", sy.tetrahedron_moment_k1().to_json_dict())
restored = sy.PiPolynomial.from_json_dict(sy.tetrahedron_moment_k1().to_json_dict())
print("    round-trip equal:", restored == sy.tetrahedron_moment_k1())
