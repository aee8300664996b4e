"""
A radius whose products start with long zero runs
=================================================

The zero-coding construction folds one oracle bit per stage at position
nu(k+1) - 1 and forces the product a * x to begin with a long run of zeros,
so its prefixes are highly compressible.  With nu(k) = 2^(2^k) and four
stages the radius has 65536 bits.
"""

from fractions import Fraction

from marstrand import (BuildInputs, RandomBits, Schedule, build_thm1,
                       recover_A, verify_build)
from marstrand.streams import cos_pi

sched = Schedule.paper_thm1()
A = RandomBits(7)
conds = [Fraction(1, 2), cos_pi(Fraction(2, 9), absolute=True)]

x, traces = build_thm1(A, conds, sched, 4)
print("radius length:", len(x))
for t in traces:
    what = "truncated" if t.truncated else f"zero run of {t.s} bits"
    print(f"  stage {t.k}: condition {t.i}, {what}, prefix now {t.x_len} bits")

print("folded oracle bits:", recover_A(x, sched, 4), "expected",
      "".join(str(A(k)) for k in range(4)))

rep = verify_build(x, traces, BuildInputs(1, sched, conds, 4, A=A))
for c in rep.checks:
    print(("ok  " if c.passed else "FAIL"), c.name, c.detail)

# a longer run on a gentler schedule shows the density profile falling
sched = Schedule.scaled(16)
a = cos_pi(Fraction(3, 11), absolute=True)
x, traces = build_thm1(RandomBits(1), [a], sched, 3)
rep = verify_build(x, traces, BuildInputs(1, sched, [a], 3, A=RandomBits(1)))
print("\nscaled:16, |cos(3pi/11)|, density K-hat/n of the product prefixes:")
for n, r in rep.density[0]:
    print(f"  n = {n:6d}   {float(r):.4f}")
