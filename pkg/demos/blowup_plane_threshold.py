#!/usr/bin/env python3
"""Walk through the blown-up plane example: how the syzygy bundle of
d * (6H - E) loses semistability against the anticanonical polarization
once d passes 17.

Run:  python demos/blowup_plane_threshold.py
"""

from syzstab import (
    Fan,
    ToricSurface,
    alpha_beta,
    d_threshold,
    slope_compare,
    syzygy_slope,
)

# the first Hirzebruch surface = the plane blown up in one point;
# section S is the exceptional curve E, and H = S + F
X = ToricSurface(Fan([(1, 0), (0, 1), (-1, 1), (0, -1)]))

D = X.from_section_fiber(5, 6)  # 6H - E
S = X.generator(1)  # the exceptional curve
A = X.from_section_fiber(2, 3)  # -K = 3H - E

print("surface:", X.fan.surface_type())
print("bundle divisor D = 6H - E, prime coordinates", list(D.int_coeffs()))
print("polarization A = -K = 3H - E, prime coordinates", list(A.int_coeffs()))
print()

ab = alpha_beta(X, D, S, A)
print(f"slope-difference numerator q(d) = {ab.alpha}*d^2 + {ab.beta}*d")
print("q is negative exactly for d > 17, so the subbundle from d*D - E")
print("must eventually win; the exact lattice counts confirm it:")
print()

print(" d   ambient slope      subbundle slope    comparison")
for d in [10, 16, 17, 18, 19, 25]:
    mu_amb = syzygy_slope(X, d * D, A)
    mu_sub = syzygy_slope(X, d * D - S, A)
    order = slope_compare(X, D, S, A, d)
    print(f"{d:>3}   {str(mu_amb):>15}    {str(mu_sub):>15}    {order}")

th = d_threshold(X, D, S, A)
print()
print(f"certified threshold: d0 = {th.d0} (strict violation: {th.strict})")
