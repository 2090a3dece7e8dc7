"""
Tail sequences and where the separation thresholds sit
======================================================

Everything quantitative in this package runs through four tail sums of
the exponential series: eta_k and zeta_k(gamma) are plain remainders,
xi_k measures how much a single coefficient at index k outweighs the
whole tail after it, and alpha_k is the same comparison for the
factorial metric on coefficient streams.  This script prints small
certified tables and the two index thresholds the library computes
from them.
"""

from fractions import Fraction

from chaoslab import (
    alpha,
    compute_m_gamma,
    compute_n_gamma,
    eta,
    separation_lower_bound,
    xi,
    xi_decrement,
    zeta,
)


def show(name, iv):
    print(f"  {name:<12} [{float(iv.lo):.15f}, {float(iv.hi):.15f}]")


# A first look at gamma = 1, where eta and zeta coincide.  The
# enclosures are certified: the true value is between lo and hi.
print("tails at gamma = 1")
for k in (1, 2, 3, 6):
    show(f"eta_{k}", eta(k))

# xi_1 and xi_2 are equal at gamma = 1 (both are 3 - e), and from
# index 1 on the sequence decreases strictly.  xi_decrement returns
# the exact rational drop gamma^k/k! * (1 - 2*gamma/(k+1)), so the
# fixed point shows up as a decrement of exactly zero.
print("\nxi at gamma = 1")
for k in (1, 2, 3, 4):
    show(f"xi_{k}", xi(1, k))
print(f"  exact drop xi_1 -> xi_2: {xi_decrement(1, 1)}")
print(f"  exact drop xi_2 -> xi_3: {xi_decrement(1, 2)}")

# For each gamma there is an index past which xi is positive and
# falling; compute_n_gamma finds it, and compute_m_gamma adds the
# safety margin the prefix-separation argument needs.  Past m_gamma,
# an L^1 distance below xi(k+1) pins the first k coefficients.
print("\nthresholds")
for g in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(10)):
    n0 = compute_n_gamma(g)
    m0 = compute_m_gamma(g)
    sep = separation_lower_bound(g)
    print(f"  gamma={str(g):<4}  n_gamma={n0:<3} m_gamma={m0:<3} "
          f"separation > {float(sep):.3e}")

# alpha plays the same role for the coefficient-stream metric: it is
# positive at every index, so one differing coefficient always beats
# the largest possible tail behind it.
print("\nalpha stays positive")
for k in (1, 2, 5, 10):
    show(f"alpha_{k}", alpha(k))

# zeta grows with gamma while eta is fixed; the certified tables make
# the crossover visible without any uncertified floating point.
print("\nzeta at k = 4 as gamma grows")
for g in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)):
    show(f"gamma={g}", zeta(g, 4))
