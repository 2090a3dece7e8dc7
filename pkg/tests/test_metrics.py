import math
import random
from fractions import Fraction

import pytest

from chaoslab.coeffspace import (
    EventuallyPeriodic,
    FiniteSupport,
    SeriesFn,
    WordEnumeration,
    Alphabet,
)
from chaoslab.errors import DomainError
from chaoslab.metrics import (
    FACTORIAL_WEIGHTS,
    UNIT_WEIGHTS,
    LpSpec,
    continuity_delta_dE,
    continuity_delta_l1,
    d_E,
    d_lambda,
    diff_sup_abs,
    holder_compare,
    rho_1_lower_bound,
    rho_p,
    series_norm,
    weighted_product_metric,
)
from chaoslab import tailmath

# mpmath oracle values, 80 decimal digits
E = Fraction("2.7182818284590452353602874713526624977572470936999595749669676")
E_MINUS_1 = E - 1
# sqrt((e^2-1)/2): L^2 norm of e^x on [0,1]
RHO2_EXP = Fraction(
    "1.7873242709327608505940477510235376694869863546317758415568557"
)
# (2/3 (e^(3/2)-1))^(2/3): L^(3/2) norm of e^x on [0,1]
RHO32_EXP = Fraction(
    "1.7530695651623979506820489296166673012523309985135475697692893"
)
# sqrt(16/3): the Holder majorant for f(x)=x on [0,2] at (p,q)=(1,2)
HOLDER_X_RHS = Fraction(
    "2.3094010767585030580365951220078298225904070050805075040744093"
)

ONES = EventuallyPeriodic((), (1,))
ZEROS = FiniteSupport(())


def series(coeffs, gamma=1):
    return SeriesFn(coeffs, gamma)


def test_d_lambda_reference_values():
    two = d_lambda(ZEROS, ONES)
    assert two.lo == two.hi == 2
    same = d_lambda(ONES, ONES)
    assert same.lo == same.hi == 0
    one = d_lambda(FiniteSupport((1,)), ZEROS)
    assert one.lo == one.hi == 1
    with pytest.raises(DomainError):
        d_lambda(FiniteSupport((2,)), ZEROS)
    with pytest.raises(DomainError):
        d_lambda(ZEROS, FiniteSupport((Fraction(1, 2),)))


def test_d_lambda_word_enumeration_tail():
    b = WordEnumeration(Alphabet((0, 1)))
    box = d_lambda(b, ZEROS, tol=Fraction(1, 10**9))
    assert box.width <= Fraction(1, 10**9)
    assert 0 < box.lo and box.hi < 2


def test_d_E_reference_values():
    e1 = d_E(ONES, ZEROS)
    assert e1.lo <= E_MINUS_1 <= e1.hi
    assert e1.width <= Fraction(1, 10**12)
    head = d_E(FiniteSupport((1,)), ZEROS)
    assert head.lo == head.hi == 1
    same = d_E(EventuallyPeriodic((2,), (0, 1)), EventuallyPeriodic((2,), (0, 1)))
    assert same.lo == same.hi == 0


def test_diff_sup_abs():
    assert diff_sup_abs(ONES, ZEROS) == 1
    assert diff_sup_abs(FiniteSupport((1, -5)), FiniteSupport((1, 2))) == 7
    assert diff_sup_abs(ONES, ONES) == 0


def test_weighted_metric_recovers_both_metrics():
    rng = random.Random(404)
    for _ in range(25):
        x = EventuallyPeriodic(
            tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4))),
            tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 3))),
        )
        y = EventuallyPeriodic((), (rng.randint(0, 1), rng.randint(0, 1)))
        assert weighted_product_metric(x, y, UNIT_WEIGHTS).intersects(d_lambda(x, y))
        assert weighted_product_metric(x, y, FACTORIAL_WEIGHTS).intersects(d_E(x, y))
    z = weighted_product_metric(ONES, ONES, FACTORIAL_WEIGHTS)
    assert z.lo == z.hi == 0


def test_lp_spec_validation():
    assert LpSpec(2, 1).p == 2
    assert LpSpec(math.inf, 1).gamma_pow_inv_p().lo == 1
    assert LpSpec(1, 4).gamma_pow_inv_p().contains(4)
    assert LpSpec(2, 4).gamma_pow_inv_p().contains(2)
    with pytest.raises(DomainError):
        LpSpec(Fraction(1, 2), 1)
    with pytest.raises(DomainError):
        LpSpec(2, 0)


def test_rho_p_exp_reference_values():
    f = series(ONES)
    g = series(ZEROS)
    tol = Fraction(1, 10**10)
    r1 = rho_p(f, g, LpSpec(1, 1), tol)
    assert r1.lo <= E_MINUS_1 <= r1.hi and r1.width <= tol
    rinf = rho_p(f, g, LpSpec(math.inf, 1), tol)
    assert rinf.lo <= E <= rinf.hi and rinf.width <= tol
    r2 = rho_p(f, g, LpSpec(2, 1), tol)
    assert r2.lo <= RHO2_EXP <= r2.hi and r2.width <= tol


def test_rho_p_fractional_exponent():
    box = rho_p(series(ONES), series(ZEROS), LpSpec(Fraction(3, 2), 1), Fraction(1, 10**6))
    assert box.lo <= RHO32_EXP <= box.hi
    assert box.width <= Fraction(1, 10**6)


def test_rho_p_trivial_and_domain_checks():
    f = series(EventuallyPeriodic((3,), (0, 2)))
    z = rho_p(f, f, LpSpec(2, 1), Fraction(1, 10**6))
    assert z.lo == 0 and z.hi <= Fraction(1, 10**6)
    with pytest.raises(DomainError):
        rho_p(series(ONES, 1), series(ONES, 2), LpSpec(1, 1))
    with pytest.raises(DomainError):
        rho_p(
            SeriesFn(ONES, 1, origin=0),
            SeriesFn(ONES, 1, origin=1),
            LpSpec(1, 1),
        )


def test_rho_p_sign_change_integrand():
    # f - g = x - 1/2 changes sign inside [0,1]; |.| integral is 1/4
    f = series(FiniteSupport((0, 1)))
    g = series(FiniteSupport((Fraction(1, 2),)))
    box = rho_p(f, g, LpSpec(1, 1), Fraction(1, 10**12))
    assert box.contains(Fraction(1, 4))
    sup = rho_p(f, g, LpSpec(math.inf, 1), Fraction(1, 10**12))
    assert sup.contains(Fraction(1, 2))


def test_rho_1_lower_bound_is_a_lower_bound():
    rng = random.Random(77)
    spec = LpSpec(1, 1)
    for _ in range(30):
        a = FiniteSupport(tuple(rng.randint(-2, 2) for _ in range(5)))
        b = FiniteSupport(tuple(rng.randint(-2, 2) for _ in range(5)))
        f, g = series(a), series(b)
        lower = rho_1_lower_bound(f, g)
        assert lower >= 0
        true_box = rho_p(f, g, spec, Fraction(1, 10**9))
        assert lower <= true_box.hi
    assert rho_1_lower_bound(series(ONES), series(ONES)) == 0


def test_series_norm_is_distance_to_zero():
    f = series(FiniteSupport((0, 1)), 2)
    spec = LpSpec(1, 2)
    a = series_norm(f, spec, Fraction(1, 10**9))
    assert a.contains(2)


def test_holder_reference_triples():
    ones = series(ONES)
    lhs, rhs = holder_compare(ones, 1, math.inf)
    assert lhs.lo <= E_MINUS_1 <= lhs.hi
    assert rhs.lo <= E <= rhs.hi
    assert lhs.lo <= rhs.hi

    const = series(FiniteSupport((1,)))
    lhs, rhs = holder_compare(const, 1, math.inf)
    assert lhs.contains(1) and rhs.contains(1)

    linear = series(FiniteSupport((0, 1)), 2)
    lhs, rhs = holder_compare(linear, 1, 2)
    assert lhs.contains(2)
    assert rhs.lo <= HOLDER_X_RHS <= rhs.hi
    assert lhs.lo <= rhs.hi

    # p = q degenerates to equality and is tolerated; p > q is not
    lhs, rhs = holder_compare(ones, 2, 2)
    assert lhs.intersects(rhs)
    with pytest.raises(DomainError):
        holder_compare(ones, 3, 2)


def test_holder_random_never_refuted():
    rng = random.Random(505)
    exponents = (Fraction(1), Fraction(4, 3), Fraction(2), Fraction(3), math.inf)
    for _ in range(40):
        coeffs = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4))
        gamma = rng.choice((Fraction(1, 2), Fraction(1), Fraction(2)))
        f = series(FiniteSupport(coeffs), gamma)
        p, q = sorted(rng.sample(exponents, 2), key=lambda v: (v is not math.inf, v))
        p, q = (q, p) if q is not math.inf and (p is math.inf or q < p) else (p, q)
        if p == q:
            continue
        lhs, rhs = holder_compare(f, p, q)
        assert lhs.lo <= rhs.hi


def test_continuity_deltas_trigger():
    # rho_1 closeness below delta forces d_E below eps
    gamma = Fraction(1)
    eps = Fraction(1, 10)
    n, delta = continuity_delta_l1(gamma, eps)
    assert delta > 0
    base = EventuallyPeriodic((), (1,))
    # flip one far coefficient: rho_1 distance <= gamma^j/j! stays under delta
    j = n + 5
    close = EventuallyPeriodic(base.prefix(j + 1) + (0,), (1,))
    r = rho_p(series(base), series(close), LpSpec(1, 1), delta / 4)
    if r.hi < delta:
        de = d_E(base, close)
        assert de.hi < eps

    m, delta2 = continuity_delta_dE(gamma, eps)
    assert delta2 == Fraction(1, math.factorial(m + 1))
    far = EventuallyPeriodic(base.prefix(m + 3) + (0,), (1,))
    de = d_E(base, far)
    if de.hi < delta2:
        sup = rho_p(series(base), series(far), LpSpec(math.inf, 1), eps / 8)
        assert sup.hi < eps
