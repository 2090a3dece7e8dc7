"""Seeded sample streams and exhaustive small families.

Everything here is driven by an explicit random.Random instance, so a
fixed seed reproduces every trial (and every counterexample) byte for
byte.  The exhaustive enumerators return normalized, deduplicated
tuples in a fixed order; suites that brute-force small coefficient
families share them instead of rolling their own.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .coeffspace import Alphabet, BINARY, EventuallyPeriodic, FiniteSupport, SeriesFn
from .constructions import Polynomial

__all__ = [
    "make_rng",
    "random_fraction",
    "random_alphabet",
    "random_stream",
    "random_binary_stream",
    "random_finite_support",
    "random_polynomial",
    "binary_family",
    "difference_streams",
    "first_nonzero_index",
]

# Small rationals with varied denominators; enough to exercise exact
# arithmetic paths without blowing up denominators downstream.
VALUE_POOL: Tuple[Fraction, ...] = (
    Fraction(0),
    Fraction(1),
    Fraction(2),
    Fraction(-1),
    Fraction(3),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(3, 2),
    Fraction(5, 4),
    Fraction(-2, 3),
)


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_fraction(rng: random.Random, pool: Sequence[Fraction] = VALUE_POOL) -> Fraction:
    return rng.choice(list(pool))


def random_alphabet(rng: random.Random, max_size: int = 4) -> Alphabet:
    """Distinct rational values, at least two of them."""
    size = rng.randint(2, max(2, max_size))
    values = rng.sample(list(VALUE_POOL), size)
    return Alphabet(tuple(values))


def random_stream(
    rng: random.Random,
    alphabet: Alphabet,
    pre_max: int = 6,
    per_max: int = 4,
) -> EventuallyPeriodic:
    pre_len = rng.randint(0, pre_max)
    per_len = rng.randint(1, per_max)
    pre = tuple(rng.choice(alphabet.values) for _ in range(pre_len))
    per = tuple(rng.choice(alphabet.values) for _ in range(per_len))
    return EventuallyPeriodic(pre, per)


def random_binary_stream(
    rng: random.Random, pre_max: int = 6, per_max: int = 4
) -> EventuallyPeriodic:
    return random_stream(rng, BINARY, pre_max, per_max)


def random_finite_support(
    rng: random.Random,
    degree_max: int = 8,
    pool: Sequence[Fraction] = VALUE_POOL,
) -> FiniteSupport:
    n = rng.randint(0, degree_max)
    return FiniteSupport(tuple(rng.choice(list(pool)) for _ in range(n + 1)))


def random_polynomial(
    rng: random.Random,
    degree_max: int = 6,
    pool: Sequence[Fraction] = VALUE_POOL,
    nonzero: bool = False,
) -> Polynomial:
    while True:
        n = rng.randint(0, degree_max)
        coeffs = tuple(rng.choice(list(pool)) for _ in range(n + 1))
        poly = Polynomial(coeffs)
        if not (nonzero and poly.is_zero()):
            return poly


# ---------------------------------------------------------------------------
# exhaustive families


def _tuples_over(values: Sequence[Fraction], length: int):
    if length == 0:
        yield ()
        return
    for head in values:
        for rest in _tuples_over(values, length - 1):
            yield (head,) + rest


def binary_family(pre_max: int = 6, per_max: int = 2) -> Tuple[EventuallyPeriodic, ...]:
    """Every {0,1} stream with preamble <= pre_max and period <= per_max.

    Normalization collapses equivalent presentations, so the result is
    duplicate-free; order is fixed by the enumeration.
    """
    values = (Fraction(0), Fraction(1))
    seen = {}
    for per_len in range(1, per_max + 1):
        for per in _tuples_over(values, per_len):
            for pre_len in range(0, pre_max + 1):
                for pre in _tuples_over(values, pre_len):
                    s = EventuallyPeriodic(pre, per)
                    seen.setdefault(s, None)
    return tuple(seen)


def first_nonzero_index(s: EventuallyPeriodic) -> Optional[int]:
    """Index of the first nonzero coefficient, None for the zero stream."""
    for i, v in enumerate(s.preamble + s.period):
        if v != 0:
            return i
    return None


def _negate(s: EventuallyPeriodic) -> EventuallyPeriodic:
    return EventuallyPeriodic(
        tuple(-v for v in s.preamble), tuple(-v for v in s.period)
    )


def difference_streams(
    values: Sequence[Fraction],
    pre_max: int,
    per_max: int,
    drop_zero: bool = True,
) -> Tuple[EventuallyPeriodic, ...]:
    """Streams over a difference-value set, up to sign and normalization.

    Pairwise metric checks over a coefficient family depend only on the
    coefficient differences, and the quantities involved are invariant
    under negating all of them, so streams whose first nonzero entry is
    negative are folded onto their mirror images.
    """
    vals = tuple(Fraction(v) for v in values)
    seen = {}
    for per_len in range(1, per_max + 1):
        for per in _tuples_over(vals, per_len):
            for pre_len in range(0, pre_max + 1):
                for pre in _tuples_over(vals, pre_len):
                    s = EventuallyPeriodic(pre, per)
                    j = first_nonzero_index(s)
                    if j is None:
                        if drop_zero:
                            continue
                    elif s.coeff(j) < 0:
                        s = _negate(s)
                    seen.setdefault(s, None)
    return tuple(seen)
