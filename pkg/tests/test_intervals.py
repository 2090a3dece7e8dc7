import random
from fractions import Fraction

import pytest

from chaoslab.errors import DomainError
from chaoslab.intervals import (
    BoundInterval,
    PowerFn,
    as_fraction,
    power,
    root,
    working_precision,
)


def rand_interval(rng, span=10):
    a = Fraction(rng.randint(-span, span), rng.randint(1, 7))
    b = Fraction(rng.randint(-span, span), rng.randint(1, 7))
    return BoundInterval(min(a, b), max(a, b))


def rand_point(rng, iv):
    if iv.width == 0:
        return iv.lo
    t = Fraction(rng.randint(0, 1000), 1000)
    return iv.lo + t * iv.width


def test_construction_and_order():
    iv = BoundInterval(Fraction(1, 3), Fraction(1, 2))
    assert iv.lo == Fraction(1, 3)
    assert iv.hi == Fraction(1, 2)
    assert iv.width == Fraction(1, 6)
    assert iv.mid == Fraction(5, 12)
    with pytest.raises(DomainError):
        BoundInterval(Fraction(2), Fraction(1))


def test_exact_and_coercion():
    iv = BoundInterval.exact("3/7")
    assert iv.lo == iv.hi == Fraction(3, 7)
    assert as_fraction(0.5) == Fraction(1, 2)
    assert as_fraction("1/3") == Fraction(1, 3)
    with pytest.raises(DomainError):
        as_fraction(float("nan"))
    with pytest.raises(DomainError):
        as_fraction(float("inf"))


def test_scalar_ops_both_sides():
    iv = BoundInterval(1, 2)
    assert (3 - iv).lo == 1 and (3 - iv).hi == 2
    assert (3 * iv).lo == 3 and (3 * iv).hi == 6
    assert (iv + Fraction(1, 2)).lo == Fraction(3, 2)
    assert (1 / BoundInterval(2, 4)).lo == Fraction(1, 4)
    assert (1 / BoundInterval(2, 4)).hi == Fraction(1, 2)


def test_division_through_zero_rejected():
    with pytest.raises(DomainError):
        BoundInterval(1, 2) / BoundInterval(-1, 1)


def test_abs_and_pow_edge_cases():
    straddle = BoundInterval(-2, 3)
    assert abs(straddle).lo == 0 and abs(straddle).hi == 3
    assert (straddle**2).lo == 0 and (straddle**2).hi == 9
    assert (straddle**3).lo == -8 and (straddle**3).hi == 27
    assert (BoundInterval(-3, -2) ** 2).lo == 4
    assert (BoundInterval(2, 3) ** -1).lo == Fraction(1, 3)
    assert (straddle**0).lo == 1 and (straddle**0).hi == 1
    with pytest.raises(DomainError):
        straddle ** Fraction(1, 2)


def test_arithmetic_is_an_enclosure():
    # fundamental containment property: op(x, y) lands inside op(X, Y)
    rng = random.Random(20240811)
    ops = [
        (lambda a, b: a + b, lambda x, y: x + y),
        (lambda a, b: a - b, lambda x, y: x - y),
        (lambda a, b: a * b, lambda x, y: x * y),
    ]
    for _ in range(300):
        X, Y = rand_interval(rng), rand_interval(rng)
        x, y = rand_point(rng, X), rand_point(rng, Y)
        for op_iv, op_pt in ops:
            assert op_iv(X, Y).contains(op_pt(x, y))
        if Y.mig > 0:
            assert (X / Y).contains(x / y)
        assert abs(X).contains(abs(x))
        for n in (2, 3, 5):
            assert (X**n).contains(x**n)


def test_hull_intersect_widen():
    a = BoundInterval(0, 1)
    b = BoundInterval(Fraction(1, 2), 2)
    assert a.hull(b).lo == 0 and a.hull(b).hi == 2
    assert a.intersects(b)
    got = a.intersect(b)
    assert got.lo == Fraction(1, 2) and got.hi == 1
    assert not a.intersects(BoundInterval(3, 4))
    with pytest.raises(DomainError):
        a.intersect(BoundInterval(3, 4))
    w = a.widened(Fraction(1, 8))
    assert w.lo == Fraction(-1, 8) and w.hi == Fraction(9, 8)
    with pytest.raises(DomainError):
        a.widened(-1)
    assert BoundInterval.hull_of([a, b]).encloses(a)
    with pytest.raises(DomainError):
        BoundInterval.hull_of([])


def test_float_export_is_outward():
    rng = random.Random(7)
    for _ in range(200):
        iv = rand_interval(rng, span=10**6)
        assert Fraction(iv.lo_float()) <= iv.lo
        assert Fraction(iv.hi_float()) >= iv.hi
    tight = BoundInterval.exact(Fraction(1, 3))
    assert tight.lo_float() < tight.hi_float()


def test_power_rational_exponent():
    # gamma^(1/p) for the L^p factors; oracle: 2^(1/2) squared straddles 2
    s = power(2, Fraction(1, 2))
    assert (s * s).contains(2)
    assert s.width < Fraction(1, 10**20)
    assert power(Fraction(1, 4), Fraction(1, 2)).contains(Fraction(1, 2))
    assert power(8, Fraction(2, 3)).contains(4)
    assert power(5, 0).contains(1)
    with pytest.raises(DomainError):
        power(-2, Fraction(1, 2))


def test_root_matches_power():
    assert root(BoundInterval.exact(9), 2).contains(3)
    got = root(BoundInterval(4, 9), 2)
    assert got.contains(2) and got.contains(3)


def test_power_fn_monotone_on_nonnegative():
    f = PowerFn(Fraction(3, 2))
    a = f(BoundInterval(1, 4))
    assert a.contains(1) and a.contains(8)
    rng = random.Random(3)
    for _ in range(50):
        lo = Fraction(rng.randint(0, 50), 7)
        hi = lo + Fraction(rng.randint(0, 50), 11)
        box = f(BoundInterval(lo, hi))
        inner = f(BoundInterval(lo + (hi - lo) / 3, hi - (hi - lo) / 3))
        assert box.encloses(inner)


def test_working_precision_env(monkeypatch):
    monkeypatch.delenv("CHAOS_LAB_PRECISION", raising=False)
    assert working_precision() == 128
    monkeypatch.setenv("CHAOS_LAB_PRECISION", "256")
    assert working_precision() == 256
    monkeypatch.setenv("CHAOS_LAB_PRECISION", "junk")
    with pytest.raises(DomainError):
        working_precision()
