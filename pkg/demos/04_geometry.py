"""
Polar points, truncation error and grid counting
================================================

Truncating r and theta to s bits and then the Cartesian coordinates to s
bits moves a point by a certified amount.  A fixed radius of 2^-s (1 + sqrt 2)
is usually, but not always, enough; the certified bound always is.
"""

from fractions import Fraction

from marstrand import (PolarPoint, cart_of_polar, count_dyadics_in_ball,
                       error_ball, signed_projection)
from marstrand.geometry import exact_cartesian_box, stated_radius_contains

p = PolarPoint(Fraction(1, 2), "1/3 pi")
(xs, ys), bound = cart_of_polar(p, 16)
print("r = 1/2, theta = pi/3, s = 16")
print("  truncated point:", xs, ys)
print(f"  certified error: {float(bound.to_fraction()):.3e}"
      f"  ({float(bound.to_fraction() * 2**16):.3f} grid units)")

# a point where every truncation pushes the same way
q = PolarPoint(Fraction(65535, 65536), Fraction(50175, 65536))
box = exact_cartesian_box(q, 60)
(xs, ys), bound = cart_of_polar(q, 8)
print("\nr = 65535/65536, theta = 50175/65536, s = 8")
print("  inside 2^-s (1 + sqrt 2):", stated_radius_contains((xs, ys), 8, box))
print("  inside the certified ball:", error_ball(q, 8).contains_box(*box),
      f"(radius {float(bound.to_fraction() * 256):.3f} grid units)")

# projections onto a line keep a sign that records which side of the normal
for theta in ("1/4 pi", "3/4 pi"):
    v = signed_projection(1, 0, theta).to_float()
    print(f"\nsigned projection of (1, 0) onto the line at {theta}: {v:+.6f}")

print("\ngrid points of mesh 2^-r within 2^-r (1 + sqrt 2):")
for a in ((0, 0), (Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 3), Fraction(2, 7))):
    print(f"  around {a[0]}, {a[1]}: {count_dyadics_in_ball(a, 6)}")
