import itertools
import random
from fractions import Fraction

import pytest

from chaoslab.coeffspace import (
    Alphabet,
    EventuallyPeriodic,
    FiniteSupport,
    SeriesFn,
    WordEnumeration,
    agree_through,
    as_preamble_period,
    derivative_sup_bound,
    evaluate,
    first_disagreement,
    from_json,
    from_payload,
    same_stream,
    shift,
    to_json,
    to_payload,
    word_start_index,
)
from chaoslab.errors import DomainError

# mpmath oracle values, 80 decimal digits
E = Fraction("2.7182818284590452353602874713526624977572470936999595749669676")
COSH_1 = Fraction("1.5430806348152437784779056207570616826015291123658637047374022")

ONES = EventuallyPeriodic((), (1,))
ZEROS = FiniteSupport(())


def test_alphabet_basics():
    F = Alphabet((0, 1, Fraction(5, 2)))
    assert len(F) == 3
    assert F.diameter == Fraction(5, 2)
    assert Fraction(1) in F and Fraction(1, 3) not in F
    assert F.index(Fraction(5, 2)) == 2
    assert Alphabet((0, 1)).is_subset_of(F)
    with pytest.raises(DomainError):
        Alphabet(())
    with pytest.raises(DomainError):
        Alphabet((1, 1))


def test_coeff_indexing():
    assert FiniteSupport((1, 0, 3)).coeff(2) == 3
    assert FiniteSupport((1, 0, 3)).coeff(7) == 0
    assert EventuallyPeriodic((1,), (0, 1)).coeff(4) == 1
    assert WordEnumeration(Alphabet((0, 1))).coeff(5) == 1


def test_finite_support_normalization():
    assert FiniteSupport((1, 0, 3, 0, 0)).coeffs == (1, 0, 3)
    assert FiniteSupport((0, 0)).coeffs == ()
    assert ZEROS.sup_abs() == 0


def test_periodic_normalization_minimal():
    # period reduced to its minimal block, preamble absorbed into a rotation
    s = EventuallyPeriodic((1,), (0, 1, 0, 1))
    assert s.preamble == () and s.period == (1, 0)
    t = EventuallyPeriodic((1, 0), (1, 0))
    assert s == t
    u = EventuallyPeriodic((1, 1), (1,))
    assert u.preamble == () and u.period == (1,)
    with pytest.raises(DomainError):
        EventuallyPeriodic((), ())


def test_shift_examples():
    assert shift(FiniteSupport((1, 0, 3))) == FiniteSupport((0, 3))
    assert shift(EventuallyPeriodic((1, 0), (1, 1, 0))) == EventuallyPeriodic(
        (0,), (1, 1, 0)
    )
    assert shift(WordEnumeration(Alphabet((0, 1)))).coeff(4) == 1
    assert WordEnumeration(Alphabet((0, 1))).shifted(5).coeff(0) == 1


def test_shift_is_reindexing():
    rng = random.Random(11)
    streams = [
        FiniteSupport(tuple(rng.randint(-3, 3) for _ in range(6))),
        EventuallyPeriodic((1, 2), (0, 5, 0)),
        WordEnumeration(Alphabet((0, 1, 2)), offset=3),
    ]
    for s in streams:
        shifted = shift(s)
        for n in range(20):
            assert shifted.coeff(n) == s.coeff(n + 1)


def test_pure_periodic_shift_cycle():
    s = EventuallyPeriodic((), (1, 1, 0))
    assert s.shifted(3) == s
    assert s.shifted(6) == s
    assert s.shifted(1) != s


def test_word_enumeration_prefix_examples():
    binary = WordEnumeration(Alphabet((0, 1)))
    assert binary.prefix(10) == (0, 1, 0, 0, 0, 1, 1, 0, 1, 1)
    ternary = WordEnumeration(Alphabet((0, 1, 2)))
    assert ternary.prefix(11) == (0, 1, 2, 0, 0, 0, 1, 0, 2, 1, 0)


def test_word_start_index_matches_stream():
    F = Alphabet((0, 1))
    assert word_start_index(F, (0,)) == 0
    assert word_start_index(F, (1,)) == 1
    assert word_start_index(F, (0, 0)) == 2
    assert word_start_index(F, (1, 1)) == 8
    b = WordEnumeration(F)
    for length in (1, 2, 3, 4):
        for word in itertools.product((0, 1), repeat=length):
            l = word_start_index(F, word)
            assert b.prefix(l + length)[l:] == tuple(Fraction(w) for w in word)


def test_stream_comparisons():
    assert same_stream(EventuallyPeriodic((), (0,)), ZEROS)
    assert not same_stream(ONES, ZEROS)
    assert first_disagreement(FiniteSupport((1,)), FiniteSupport((1, 0, 2)), 10) == 2
    assert first_disagreement(ONES, ONES, 50) is None
    assert agree_through(FiniteSupport((1, 0, 3)), FiniteSupport((1, 0, 3, 5)), 2)
    assert not agree_through(FiniteSupport((1, 0, 3)), FiniteSupport((1, 0, 3, 5)), 3)


def test_as_preamble_period():
    pre, per = as_preamble_period(FiniteSupport((2, 1)))
    assert pre == (2, 1) and per == (0,)
    pre, per = as_preamble_period(EventuallyPeriodic((0,), (2, 3)))
    assert pre == (0,) and per == (2, 3)
    assert as_preamble_period(WordEnumeration(Alphabet((0, 1)))) is None


def test_in_EF_and_value_set():
    F = Alphabet((0, 1))
    assert EventuallyPeriodic((1,), (0,)).in_EF(F)
    assert not FiniteSupport((1, 2)).in_EF(F)
    assert WordEnumeration(F).in_EF(F)
    assert WordEnumeration(F, offset=7).value_set() == frozenset(
        (Fraction(0), Fraction(1))
    )
    assert FiniteSupport((1, 2)).value_set() == frozenset(
        (Fraction(0), Fraction(1), Fraction(2))
    )
    assert shift(EventuallyPeriodic((5,), (1, 0))).in_EF(F)


def test_evaluate_reference_values():
    f = SeriesFn(ONES, 1)
    box = evaluate(f, 1)
    assert box.lo <= E <= box.hi
    assert box.width <= 2 * Fraction(1, 10**12)
    one = evaluate(SeriesFn(FiniteSupport((1,)), 2), Fraction(3, 2))
    assert one.lo == one.hi == 1
    cosh = evaluate(SeriesFn(EventuallyPeriodic((), (1, 0)), 1), 1)
    assert cosh.lo <= COSH_1 <= cosh.hi


def test_evaluate_domain_checks():
    f = SeriesFn(ONES, 1)
    with pytest.raises(DomainError):
        evaluate(f, 2)
    with pytest.raises(DomainError):
        evaluate(f, Fraction(-1, 10))
    with pytest.raises(DomainError):
        evaluate(f, Fraction(1, 2), tol=0)
    shifted_domain = SeriesFn(ONES, 1, origin=Fraction(1, 2))
    assert evaluate(shifted_domain, Fraction(3, 2)).lo <= E


def test_series_fn_derivative_and_domain():
    f = SeriesFn(FiniteSupport((0, 1)), 2)
    assert f.domain == (0, 2)
    assert f.derivative().coeffs == FiniteSupport((1,))
    with pytest.raises(DomainError):
        SeriesFn(ONES, 0)
    with pytest.raises(DomainError):
        SeriesFn(ONES, -1)


def test_derivative_sup_bound_examples():
    assert derivative_sup_bound(SeriesFn(ZEROS, 1)) == 0
    assert derivative_sup_bound(SeriesFn(ONES, 1)) >= E
    assert derivative_sup_bound(SeriesFn(FiniteSupport((0, 1)), 2)) >= 1


def test_json_round_trip_all_kinds():
    F = Alphabet((Fraction(0), Fraction(1, 3)))
    cases = [
        ZEROS,
        FiniteSupport((Fraction(1, 3), 0, Fraction(-2, 7))),
        EventuallyPeriodic((1,), (0, Fraction(5, 2))),
        WordEnumeration(F, offset=4),
        SeriesFn(EventuallyPeriodic((), (1,)), Fraction(3, 2), Fraction(-1, 4)),
    ]
    for obj in cases:
        again = from_json(to_json(obj))
        assert again == obj
        assert from_payload(to_payload(obj)) == obj


def test_json_wire_format_strings():
    payload = to_payload(FiniteSupport((Fraction(1, 3),)))
    assert payload == {"kind": "finite", "preamble": ["1/3"]}
    f = SeriesFn(FiniteSupport((1,)), 2)
    payload = to_payload(f)
    assert payload["gamma"] == "2" and payload["origin"] == "0"


def test_json_malformed_rejected():
    with pytest.raises(DomainError):
        from_json("{not json")
    with pytest.raises(DomainError):
        from_payload({"kind": "mystery"})
    with pytest.raises(DomainError):
        from_payload({"kind": "periodic", "preamble": [], "period": ["1.5.3"]})
