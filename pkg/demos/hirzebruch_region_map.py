#!/usr/bin/env python3
"""Text map of the instability region on the first Hirzebruch surface.

Axes are the two slope parameters: b = B2/B1 for the bundle divisor
B1*S + B2*F (across) and a = A2/A1 for the polarization (down).  A '#'
marks polarizations that destabilize all large tensor powers, '.' marks
tuples the region test does not cover, and the curve between them is
a = 2b(b-1) + 1.

Run:  python demos/hirzebruch_region_map.py
"""

from fractions import Fraction

from syzstab import UNSTABLE_FOR_LARGE_D, hirzebruch_region

ELL = 1
STEP = Fraction(1, 8)

b_values = [1 + k * STEP for k in range(1, 17)]
a_values = [1 + k * STEP for k in range(1, 25)]

header = "a \\ b " + " ".join(f"{str(b):>5}" for b in b_values)
print(header)
for a in reversed(a_values):
    cells = []
    for b in b_values:
        verdict = hirzebruch_region(ELL, a, b)
        cells.append("#" if verdict == UNSTABLE_FOR_LARGE_D else ".")
    print(f"{str(a):>5} " + " ".join(f"{c:>5}" for c in cells))

print()
print("boundary curve: a = 2b(b-1) + 1; on the curve itself the verdict")
print("is decided by the sign of 2b^2 - 3b, i.e. by b against 3/2:")
for b in [Fraction(11, 8), Fraction(3, 2), Fraction(13, 8)]:
    a = 2 * b * (b - 1) + 1
    print(f"  b = {b}: a = {a} -> {hirzebruch_region(ELL, a, b)}")
