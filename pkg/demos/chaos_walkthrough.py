"""
A walkthrough of the shift dynamics on coefficient streams
==========================================================

Differentiating sum a_n x^n / n! just drops a_0 and slides the rest
down, so d/dx acts on the coefficient stream as the shift map.  This
script builds, with certified distances at every step, the three
ingredients of chaotic behaviour for that map on streams over a finite
coefficient set: dense periodic points, one orbit that visits
everything, and sensitivity with explicit constants.
"""

import math
from fractions import Fraction

from chaoslab import (
    Alphabet,
    EventuallyPeriodic,
    FiniteSupport,
    LpSpec,
    SeriesFn,
    dense_orbit_point,
    orbit_search,
    periodic_approx_in_EF,
    rho_p,
    sensitivity_witness,
    transitivity_witness,
)

BINARY = Alphabet((0, 1))
SUP = LpSpec(math.inf, 1)
ones = EventuallyPeriodic((), (1,))
zeros = FiniteSupport(())


def show(name, iv):
    print(f"  {name:<26} [{float(iv.lo):.9f}, {float(iv.hi):.9f}]")


# One stream whose coefficients spell out every finite word over the
# alphabet, in length order.  Shifting it far enough reproduces any
# prescribed prefix, which is all transitivity needs.
b = dense_orbit_point(BINARY)
print("word enumeration stream starts:", ",".join(str(b.coeff(i)) for i in range(16)))

l = orbit_search(b, ones, BINARY, 1, SUP, Fraction(2))
rho = rho_p(SeriesFn(b.shifted(l), 1), SeriesFn(ones, 1), SUP, Fraction(1, 8))
print(f"shift by {l} lands within 2 of e^x:")
show("sup distance", rho)

# Periodic points are dense: truncate any stream after the tail stops
# mattering and repeat the prefix forever.  The approximant below is
# genuinely periodic (shifting by its period returns it exactly) and
# certified within 3/10 of the target.
approx = periodic_approx_in_EF(b, BINARY, 1, SUP, Fraction(3, 10))
period = ",".join(str(v) for v in approx.period)
print(f"\nperiodic approximant of the enumeration stream: period ({period})")
rho = rho_p(SeriesFn(approx, 1), SeriesFn(b, 1), SUP, Fraction(1, 64))
show("sup distance", rho)
print("  shift by period returns it:", approx.shifted(len(approx.period)) == approx)

# A transitivity witness: one stream that sits within 3/10 of the zero
# function and, after n shifts, within 3/10 of e^x.  The construction
# glues a long zero prefix onto the all-ones tail.
h, n = transitivity_witness(zeros, ones, Fraction(3, 10), Fraction(3, 10),
                            BINARY, 1, SUP)
print(f"\ntransitivity witness: {n} shifts from near 0 to near e^x")
show("start, vs zero", rho_p(SeriesFn(h, 1), SeriesFn(zeros, 1), SUP, Fraction(1, 64)))
show(f"after {n} shifts, vs e^x",
     rho_p(SeriesFn(h.shifted(n), 1), SeriesFn(ones, 1), SUP, Fraction(1, 64)))

# Sensitivity with explicit constants: near the zero function there is
# a g within 1/2 whose 4th derivative is more than 1 away from the 4th
# derivative of 0, everywhere certified.
w = sensitivity_witness(SeriesFn(zeros, 1), beta=1, eps=Fraction(1, 2))
close, far = w.certificates
print(f"\nsensitivity witness at eps=1/2, beta=1: n = {w.n}")
pre = ",".join(str(v) for v in w.g.coeffs.preamble)
per = ",".join(str(v) for v in w.g.coeffs.period)
print(f"  g = preamble ({pre}) then period ({per})")
show("g vs 0", close)
show(f"{w.n}-th derivatives", far)

# The same machinery scales: ask for a thousandfold derivative blowup
# while staying fifty times closer, and the witness just uses a deeper
# index.
w = sensitivity_witness(SeriesFn(zeros, 1), beta=1000, eps=Fraction(1, 100))
close, far = w.certificates
print(f"\nharder ask (eps=1/100, beta=1000): n = {w.n}")
show("g vs 0", close)
print(f"  derivative gap lower bound: {float(far.lo):.3f}")
