"""
Three metrics, one geometry
===========================

Coefficient streams carry a product-style metric (a weighted sum of
coordinate differences), function space carries the L^p distances on
[0, gamma], and the factorial-weighted stream metric d_E is built to
mirror the function-space geometry exactly.  This script shows the
identifications numerically, with certified enclosures, and checks the
two structural facts that make them work: the shift/derivative square
commutes, and translating the domain moves nothing metrically.
"""

import math
from fractions import Fraction

from chaoslab import (
    FACTORIAL_WEIGHTS,
    UNIT_WEIGHTS,
    EventuallyPeriodic,
    FiniteSupport,
    LpSpec,
    SeriesFn,
    check_commuting_square,
    check_translation_isometry,
    d_E,
    d_lambda,
    holder_compare,
    rho_p,
    translate,
    untranslate,
)

ones = EventuallyPeriodic((), (1,))
zeros = FiniteSupport(())


def show(name, iv):
    print(f"  {name:<28} [{float(iv.lo):.12f}, {float(iv.hi):.12f}]")


# The binary-stream metric sums |x_i - y_i| / 2^i; with unit weights
# the general weighted metric reproduces it, and with factorial
# weights 2^i/(i+1)! it reproduces d_E.  Same inputs, same numbers.
from chaoslab import weighted_product_metric

print("stream metrics on (all ones) vs (all zeros)")
show("d_lambda", d_lambda(ones, zeros))
show("weighted, unit weights", weighted_product_metric(ones, zeros, UNIT_WEIGHTS))
show("d_E", d_E(ones, zeros))
show("weighted, factorial weights",
     weighted_product_metric(ones, zeros, FACTORIAL_WEIGHTS))

# d_E of these two streams is e - 1, and so is the L^1 distance of the
# functions they represent on [0,1]: the stream metric was chosen to
# make the coefficient embedding an isometry.
f = SeriesFn(ones, 1)
z = SeriesFn(zeros, 1)
print("\nfunction-space distances of e^x from 0 on [0,1]")
show("L^1", rho_p(f, z, LpSpec(1, 1), Fraction(1, 10**10)))
show("L^2", rho_p(f, z, LpSpec(2, 1), Fraction(1, 10**10)))
show("sup", rho_p(f, z, LpSpec(math.inf, 1), Fraction(1, 10**10)))

# Norms on a bounded window compare across exponents with the usual
# window-volume factor; here is the chain L^1 <= L^2 <= sup for e^x.
lhs, rhs = holder_compare(f, 1, 2)
print("\nnorm comparison, p=1 against q=2")
show("||f||_1", lhs)
show("gamma^(1/1-1/2) ||f||_2", rhs)
print("  certified lhs <= rhs:", lhs.lo <= rhs.hi)

# The square that makes all of this about dynamics: embed a stream,
# differentiate, and read the coefficients back; you get the shifted
# stream, index for index.  The report also re-checks the isometry on
# a partner stream with tight enclosures.
a = EventuallyPeriodic((1, 0), (1, 1, 0))
rep = check_commuting_square(a, 1, window=128, partner=ones)
print("\ncommuting square on a mixed stream")
print("  exact coefficient match through window 128:", rep.passed)
show("d_E(embedded pair)", rep.isometry_d_E)
show("weighted metric, same pair", rep.isometry_weighted)

# Finally, sliding the window [0,1] to [5/4, 9/4] is a conjugacy: it
# commutes with d/dx and preserves every rho_p.  The translation
# operators undo each other exactly, no rounding anywhere.
offset = Fraction(5, 4)
rep = check_translation_isometry(f, z, offset, LpSpec(2, 1), tol=Fraction(1, 10**8))
print(f"\ntranslation by {offset}")
show("rho_2 before", rep.rho_before)
show("rho_2 after", rep.rho_after)
print("  derivative commutes with translation:", rep.derivative_commutes)
print("  exact round trip:", untranslate(translate(f, offset), offset) == f)
