"""Certified enclosures for the factorial tail sequences.

The whole library leans on four families of series, all built from
gamma**i / i! terms on a window [0, gamma]:

    eta_k          = sum_{i >= k} 1/i!
    zeta_k(gamma)  = sum_{i >= k} gamma^i/i!
    xi_k(gamma)    = gamma^k/k! - zeta_{k+1}(gamma)
    alpha_k        = 1/k! - eta_{k+1}

Partial sums are exact rationals.  The discarded tail of zeta is bounded
by the geometric majorant

    sum_{i > K} gamma^i/i!  <  gamma^(K+1)/(K+1)! * (K+2)/(K+2-gamma)

valid whenever K + 2 > gamma (the term ratio gamma/(i+1) is at most
gamma/(K+2) past the cutoff), with eta the gamma = 1 case.  So every
enclosure here is a pair of rationals sandwiching the true value, and
widening the cutoff only ever shrinks the interval.

xi_k changes sign: it is negative for small k when gamma is large and
positive from a computable threshold on.  compute_threshold_index
(`n_gamma`) returns a certified index past which xi is positive and
nonincreasing; compute_separation_index (`m_gamma`) returns the index
from which an L1 distance below xi_{k+1} forces coefficient agreement
through k.  Both follow the constructive recipes of the underlying
inequalities and use only certified comparisons, so the returned
thresholds are always valid, if occasionally one step conservative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict

from .errors import DomainError, ToleranceUnreachable
from .intervals import BoundInterval, as_fraction

DEFAULT_REL_TOL = Fraction(1, 10**15)

_MAX_EXTRA_TERMS = 10_000


def _factorial(n: int) -> int:
    return math.factorial(n)


def _ceil_strict(q: Fraction) -> int:
    """Least integer strictly greater than q."""
    return math.floor(q) + 1


@lru_cache(maxsize=None)
def _tail_sum(gamma: Fraction, k: int, rel_tol: Fraction) -> BoundInterval:
    """Enclosure of sum_{i >= k} gamma^i / i! for gamma > 0, k >= 0."""
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    if k < 0:
        raise DomainError(f"tail index must be nonnegative, got {k}")
    if rel_tol <= 0:
        raise DomainError("relative tolerance must be positive")
    # Cutoff floor: at least ten extra terms, and far enough out that the
    # geometric majorant's ratio gamma/(K+2) is below 1/2.
    cutoff = max(k + 10, _ceil_strict(2 * gamma))
    term = gamma**k / _factorial(k)
    partial = Fraction(0)
    i = k
    while True:
        while i <= cutoff:
            partial += term
            i += 1
            term = term * gamma / i
        # `term` is now gamma^(K+1)/(K+1)! with K = cutoff
        tail_bound = term * (cutoff + 2) / (cutoff + 2 - gamma)
        if tail_bound <= rel_tol * partial:
            return BoundInterval(partial, partial + tail_bound)
        if cutoff - k > _MAX_EXTRA_TERMS:
            raise ToleranceUnreachable(
                f"tail sum at gamma={gamma}, k={k} did not reach rel_tol={rel_tol}"
            )
        cutoff += 8


def eta(k: int, rel_tol=DEFAULT_REL_TOL) -> BoundInterval:
    """Certified enclosure of eta_k = sum_{i >= k} 1/i!."""
    return _tail_sum(Fraction(1), int(k), as_fraction(rel_tol))


def zeta(gamma, k: int, rel_tol=DEFAULT_REL_TOL) -> BoundInterval:
    """Certified enclosure of zeta_k(gamma) = sum_{i >= k} gamma^i/i!."""
    return _tail_sum(as_fraction(gamma), int(k), as_fraction(rel_tol))


def exp_enclosure(gamma, rel_tol=DEFAULT_REL_TOL) -> BoundInterval:
    """Certified enclosure of e**gamma (the k = 0 tail)."""
    return _tail_sum(as_fraction(gamma), 0, as_fraction(rel_tol))


def xi(gamma, k: int, rel_tol=DEFAULT_REL_TOL) -> BoundInterval:
    """Certified enclosure of xi_k = gamma^k/k! - zeta_{k+1}(gamma).

    May well be negative: for gamma = 5 the first few indices are, and
    the sign turnover is exactly what compute_threshold_index locates.
    """
    g = as_fraction(gamma)
    k = int(k)
    if k < 0:
        raise DomainError("xi index must be nonnegative")
    head = g**k / _factorial(k)
    tail = _tail_sum(g, k + 1, as_fraction(rel_tol))
    return BoundInterval(head - tail.hi, head - tail.lo)


def alpha(k: int, rel_tol=DEFAULT_REL_TOL) -> BoundInterval:
    """Certified enclosure of alpha_k = 1/k! - eta_{k+1}."""
    k = int(k)
    if k < 0:
        raise DomainError("alpha index must be nonnegative")
    head = Fraction(1, _factorial(k))
    tail = _tail_sum(Fraction(1), k + 1, as_fraction(rel_tol))
    return BoundInterval(head - tail.hi, head - tail.lo)


def xi_decrement(gamma, k: int) -> Fraction:
    """Exact value of xi_k - xi_{k+1} = (gamma^k/k!) * (1 - 2*gamma/(k+1)).

    The telescoped closed form: both zeta tails cancel except for one
    term, leaving a pure rational.  Nonnegative iff k + 1 >= 2*gamma.
    """
    g = as_fraction(gamma)
    k = int(k)
    return (g**k / _factorial(k)) * (1 - 2 * g / (k + 1))


@lru_cache(maxsize=None)
def _threshold_index(gamma: Fraction) -> int:
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    # n1: least n with n + 2 > gamma, so the geometric tail majorant for
    # zeta_{k+1} is valid from k > n1 on.
    n1 = max(0, _ceil_strict(gamma - 2))
    # n2: least n such that k^2 + (3 - 2g)k + (2 - 3g) > 0 for every
    # integer k > n, i.e. the tail majorant stays strictly below the head
    # term.  The quadratic opens upward with vertex at (2g - 3)/2; scan
    # right of the vertex for the first positive value.
    def quad(k: int) -> Fraction:
        return Fraction(k) ** 2 + (3 - 2 * gamma) * k + (2 - 3 * gamma)

    k = max(0, _ceil_strict((2 * gamma - 3) / 2) )
    while quad(k) <= 0:
        k += 1
    n2 = max(0, k - 1)
    # n3: least n with n > 2*gamma - 1; from here the exact decrement
    # (gamma^k/k!)(1 - 2 gamma/(k+1)) is nonnegative, so xi is
    # nonincreasing.
    n3 = max(0, _ceil_strict(2 * gamma - 1))
    # Positivity is only proved for k strictly past n1 and n2, hence the
    # +1 on those two.
    return max(n1 + 1, n2 + 1, n3)


def compute_n_gamma(gamma) -> int:
    """Certified index N with xi_k(gamma) > 0 and nonincreasing for k >= N."""
    return _threshold_index(as_fraction(gamma))


@lru_cache(maxsize=None)
def _separation_scan(gamma: Fraction, rel_tol: Fraction):
    n_gamma = _threshold_index(gamma)
    # Certified lower bound for the minimal separation delta: for each
    # prefix length m below the threshold, a disagreement at index m
    # forces an L1 distance of at least alpha_{m+1} (gamma > 1) or
    # gamma^(m+1) * alpha_{m+1} (gamma <= 1).
    delta_lo = None
    for m in range(n_gamma):
        a = alpha(m + 1, rel_tol)
        bound_lo = a.lo if gamma > 1 else gamma ** (m + 1) * a.lo
        if delta_lo is None or bound_lo < delta_lo:
            delta_lo = bound_lo
    if delta_lo is None:
        # n_gamma = 0 cannot happen (threshold is at least 1), but guard.
        delta_lo = Fraction(1)
    if delta_lo <= 0:
        raise ToleranceUnreachable(
            f"certified separation bound at gamma={gamma} is not positive; "
            "tighten rel_tol"
        )

    def acceptable(j: int) -> bool:
        return xi(gamma, j, rel_tol).hi <= delta_lo

    # Least j >= n_gamma whose xi enclosure sits below delta; past the
    # threshold xi is exactly nonincreasing, so acceptance propagates to
    # every larger index.
    j = max(1, n_gamma)
    guard = 0
    while not acceptable(j):
        j += 1
        guard += 1
        if guard > _MAX_EXTRA_TERMS:
            raise ToleranceUnreachable(
                f"xi never certified below delta at gamma={gamma}"
            )
    # Indices below the threshold are not monotone, so extend downward
    # only through certified-contiguous acceptances.
    while j - 1 >= 1 and acceptable(j - 1):
        j -= 1
    n0 = max(0, j - 2)
    return n0, delta_lo, n_gamma


def compute_m_gamma(gamma, rel_tol=DEFAULT_REL_TOL) -> int:
    """Certified index M: L1 distance below xi_{k+1} with k >= M forces
    coefficient agreement through index k.

    Returns max(N0 + 1, n_gamma) where N0 is the least certified index
    such that xi_{n+1} <= delta for all n > N0, with delta the minimal
    certified separation produced by a disagreement below the threshold.
    """
    n0, _, n_gamma = _separation_scan(as_fraction(gamma), as_fraction(rel_tol))
    return max(n0 + 1, n_gamma)


def separation_lower_bound(gamma, rel_tol=DEFAULT_REL_TOL) -> Fraction:
    """The certified delta used by compute_m_gamma (exposed for audits)."""
    _, delta_lo, _ = _separation_scan(as_fraction(gamma), as_fraction(rel_tol))
    return delta_lo


@dataclass(frozen=True)
class TailTable:
    """Precomputed tail enclosures for one gamma, up to index k_max."""

    gamma: Fraction
    k_max: int
    eta: Dict[int, BoundInterval] = field(repr=False)
    zeta: Dict[int, BoundInterval] = field(repr=False)
    xi: Dict[int, BoundInterval] = field(repr=False)
    alpha: Dict[int, BoundInterval] = field(repr=False)
    n_gamma: int = 0
    m_gamma: int = 0


def build_tail_table(gamma, k_max: int, rel_tol=DEFAULT_REL_TOL) -> TailTable:
    g = as_fraction(gamma)
    k_max = int(k_max)
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    tol = as_fraction(rel_tol)
    return TailTable(
        gamma=g,
        k_max=k_max,
        eta={k: eta(k, tol) for k in range(1, k_max + 1)},
        zeta={k: zeta(g, k, tol) for k in range(1, k_max + 1)},
        xi={k: xi(g, k, tol) for k in range(1, k_max + 1)},
        alpha={k: alpha(k, tol) for k in range(1, k_max + 1)},
        n_gamma=compute_n_gamma(g),
        m_gamma=compute_m_gamma(g, tol),
    )
