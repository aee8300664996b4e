"""
One extension step, by hand
===========================

Given a prefix sigma of a radius and a multiplier a, we look for a longer
prefix rho such that every real starting with rho, multiplied by a, starts
with a word tau that ends in a chosen block b.  Run with
``python demos/01_extension_step.py``.
"""

from fractions import Fraction

from marstrand import BitString, cos_pi, extend_with_block

sigma = BitString("1")
b = BitString("00")

# a = 1/2: every real in [0.1...] halves into [0.01...]
r = extend_with_block(sigma, Fraction(1, 2), b)
print("a = 1/2")
print("  rho       =", r.rho)
print("  tau'      =", r.tau_prime, "(fixed by a and sigma)")
print("  tau       =", r.tau, "(tau' followed by the block)")
print("  [tau]     =", r.I)
print("  [rho]     =", r.J)
print("  growth    =", len(r.rho) - len(sigma), "bits for a", len(b), "bit block")

# an irrational multiplier works the same way through certified enclosures
a = cos_pi(Fraction(1, 7))
w = BitString("0110")
for block in ("1", "101", "1111000011"):
    r = extend_with_block(w, a, BitString(block))
    print(f"a = cos(pi/7), block {block:>10}: rho has {len(r.rho)} bits, "
          f"tau = {r.tau}")
    w = r.rho

# chaining the steps is exactly what the constructions do: the prefix keeps
# growing and each product prefix carries the blocks chosen so far
print("final prefix:", w)
