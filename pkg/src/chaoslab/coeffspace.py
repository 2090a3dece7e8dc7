"""Coefficient sequences and the series they generate.

A function on [origin, origin + gamma] is stored through its scaled
Taylor coefficients: f(x) = sum_n a_n (x - origin)^n / n!.  In this
normalization differentiation is literally the left shift
(a_0, a_1, ...) -> (a_1, a_2, ...), which is the whole point of the
library.  Three tail disciplines are representable, and each is closed
under shifting:

* FiniteSupport: finitely many nonzero coefficients (polynomials).
* EventuallyPeriodic: a finite preamble followed by a repeating block.
  Construction normalizes to the minimal period and minimal preamble,
  so structural equality decides mathematical equality within the kind.
* WordEnumeration: the concatenation of every finite word over a finite
  alphabet, ordered by length then lexicographically (in alphabet
  order).  Shifting is O(1) by bumping a start offset.

All coefficient values are exact `fractions.Fraction`s.  Sequences with
coefficients drawn from a finite alphabet F live in the closed set E_F;
membership is decidable for all three kinds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from .errors import DomainError, ToleranceUnreachable
from .intervals import BoundInterval, as_fraction
from . import tailmath


# ---------------------------------------------------------------------------
# alphabets


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of rational coefficient values."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if not vals:
            raise DomainError("alphabet must be nonempty")
        if len(set(vals)) != len(vals):
            raise DomainError(f"alphabet has duplicate values: {vals}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, value) -> bool:
        return as_fraction(value) in self.values

    @property
    def diameter(self) -> Fraction:
        return max(self.values) - min(self.values)

    def index(self, value) -> int:
        return self.values.index(as_fraction(value))

    def is_subset_of(self, other: "Alphabet") -> bool:
        return set(self.values) <= set(other.values)

    def union(self, extra: Iterable) -> "Alphabet":
        """Alphabet extended by new values, original order first."""
        vals = list(self.values)
        for v in extra:
            q = as_fraction(v)
            if q not in vals:
                vals.append(q)
        return Alphabet(tuple(vals))


BINARY = Alphabet((Fraction(0), Fraction(1)))


# ---------------------------------------------------------------------------
# coefficient sequences


def _as_coeff_tuple(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


class CoeffSeq:
    """Common interface of the three sequence kinds (do not instantiate)."""

    def coeff(self, n: int) -> Fraction:
        raise NotImplementedError

    def shift(self) -> "CoeffSeq":
        raise NotImplementedError

    def prefix(self, n: int) -> Tuple[Fraction, ...]:
        return tuple(self.coeff(i) for i in range(n))

    def sup_abs(self) -> Fraction:
        """Exact sup of |a_n| over all n."""
        raise NotImplementedError

    def value_set(self) -> Optional[frozenset]:
        """The set of values the sequence takes, when finite and known."""
        raise NotImplementedError

    def in_EF(self, alphabet: Alphabet) -> bool:
        vals = self.value_set()
        if vals is None:
            raise DomainError("cannot decide membership for this sequence")
        allowed = set(alphabet.values)
        return vals <= allowed

    def shifted(self, times: int) -> "CoeffSeq":
        s = self
        for _ in range(times):
            s = s.shift()
        return s


@dataclass(frozen=True)
class FiniteSupport(CoeffSeq):
    """Sequence with finitely many nonzero entries; trailing zeros stripped."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        vals = _as_coeff_tuple(self.coeffs)
        while vals and vals[-1] == 0:
            vals = vals[:-1]
        object.__setattr__(self, "coeffs", vals)

    def coeff(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError("negative index")
        return self.coeffs[n] if n < len(self.coeffs) else Fraction(0)

    def shift(self) -> "FiniteSupport":
        return FiniteSupport(self.coeffs[1:])

    def sup_abs(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=Fraction(0))

    def value_set(self) -> frozenset:
        # every finite-support sequence takes the value 0 infinitely often
        return frozenset(self.coeffs) | {Fraction(0)}

    @property
    def degree(self) -> int:
        """Largest index with a nonzero coefficient; -1 for the zero sequence."""
        return len(self.coeffs) - 1


def _minimal_period(block: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
    n = len(block)
    for d in range(1, n):
        if n % d == 0 and block == block[:d] * (n // d):
            return block[:d]
    return block


@dataclass(frozen=True)
class EventuallyPeriodic(CoeffSeq):
    """Finite preamble followed by a repeating block, normalized on build.

    Normalization first reduces the block to its minimal period, then
    absorbs any preamble suffix that merely repeats the block's last
    symbol by rotating the block.  Two constructions describe the same
    sequence iff the normalized fields are equal.
    """

    preamble: Tuple[Fraction, ...]
    period: Tuple[Fraction, ...]

    def __post_init__(self):
        pre = _as_coeff_tuple(self.preamble)
        per = _as_coeff_tuple(self.period)
        if not per:
            raise DomainError("period block must be nonempty")
        per = _minimal_period(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        per = _minimal_period(per)
        object.__setattr__(self, "preamble", pre)
        object.__setattr__(self, "period", per)

    def coeff(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError("negative index")
        if n < len(self.preamble):
            return self.preamble[n]
        return self.period[(n - len(self.preamble)) % len(self.period)]

    def shift(self) -> "EventuallyPeriodic":
        if self.preamble:
            return EventuallyPeriodic(self.preamble[1:], self.period)
        return EventuallyPeriodic((), self.period[1:] + self.period[:1])

    def sup_abs(self) -> Fraction:
        return max(abs(c) for c in self.preamble + self.period)

    def value_set(self) -> frozenset:
        return frozenset(self.preamble + self.period)

    @property
    def is_pure_periodic(self) -> bool:
        return not self.preamble


@dataclass(frozen=True)
class WordEnumeration(CoeffSeq):
    """Concatenation of all words over an alphabet, length-then-lex order.

    For alphabet (c_0, ..., c_{m-1}) the stream is every length-1 word,
    then every length-2 word, and so on, each block in lexicographic
    order of alphabet indices.  `offset` marks how many leading symbols
    have been shifted away, so shift() is O(1) and coeff(n) is a closed
    form in n + offset.
    """

    alphabet: Alphabet
    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise DomainError("offset must be nonnegative")

    def coeff(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError("negative index")
        i = n + self.offset
        m = len(self.alphabet)
        # locate the length-L block: blocks contribute L * m^L symbols
        length = 1
        block = m
        start = 0
        while start + length * block <= i:
            start += length * block
            length += 1
            block *= m
        q, r = divmod(i - start, length)
        # q-th word of this length, symbol r (most significant first)
        digit = (q // m ** (length - 1 - r)) % m
        return self.alphabet.values[digit]

    def shift(self) -> "WordEnumeration":
        return WordEnumeration(self.alphabet, self.offset + 1)

    def sup_abs(self) -> Fraction:
        return max(abs(c) for c in self.alphabet.values)

    def value_set(self) -> frozenset:
        return frozenset(self.alphabet.values)


def word_start_index(alphabet: Alphabet, word: Sequence) -> int:
    """Index in the enumeration stream where `word` begins as a whole word.

    Closed form: all blocks of shorter words contribute sum_{j<L} j*m^j
    symbols, and within the length-L block the word sits at L times its
    lexicographic rank.  No scanning.
    """
    symbols = _as_coeff_tuple(word)
    if not symbols:
        raise DomainError("empty word has no start index")
    m = len(alphabet)
    length = len(symbols)
    start = sum(j * m**j for j in range(1, length))
    rank = 0
    for s in symbols:
        rank = rank * m + alphabet.index(s)
    return start + length * rank


# ---------------------------------------------------------------------------
# structural helpers


def coeff(s: CoeffSeq, n: int) -> Fraction:
    return s.coeff(n)


def shift(s: CoeffSeq) -> CoeffSeq:
    """The left shift: drop a_0.  Under the series dictionary this is
    exactly differentiation."""
    return s.shift()


def as_preamble_period(s: CoeffSeq) -> Optional[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]]:
    """(preamble, period) of an eventually periodic stream, else None.

    FiniteSupport is the period-(0) case.  A WordEnumeration over a
    single symbol is the constant stream; over two or more it is never
    eventually periodic.
    """
    if isinstance(s, FiniteSupport):
        return EventuallyPeriodic(s.coeffs, (Fraction(0),)).preamble, (Fraction(0),)
    if isinstance(s, EventuallyPeriodic):
        return s.preamble, s.period
    if isinstance(s, WordEnumeration) and len(s.alphabet) == 1:
        return (), (s.alphabet.values[0],)
    return None


def same_stream(a: CoeffSeq, b: CoeffSeq) -> bool:
    """Decidable equality of the underlying coefficient streams."""
    pa, pb = as_preamble_period(a), as_preamble_period(b)
    if pa is not None and pb is not None:
        return EventuallyPeriodic(*pa) == EventuallyPeriodic(*pb)
    if pa is None and pb is None:
        return a == b
    return False


def first_disagreement(a: CoeffSeq, b: CoeffSeq, upto: int) -> Optional[int]:
    """Least index < upto where the sequences differ, or None."""
    for i in range(upto):
        if a.coeff(i) != b.coeff(i):
            return i
    return None


def agree_through(a: CoeffSeq, b: CoeffSeq, k: int) -> bool:
    """True iff coefficients agree at every index 0..k."""
    return first_disagreement(a, b, k + 1) is None


# ---------------------------------------------------------------------------
# series functions


@dataclass(frozen=True)
class SeriesFn:
    """f(x) = sum_n a_n (x - origin)^n / n! on [origin, origin + gamma]."""

    coeffs: CoeffSeq
    gamma: Fraction
    origin: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_fraction(self.gamma))
        object.__setattr__(self, "origin", as_fraction(self.origin))
        if self.gamma <= 0:
            raise DomainError("gamma must be positive")

    @property
    def domain(self) -> Tuple[Fraction, Fraction]:
        return (self.origin, self.origin + self.gamma)

    def derivative(self) -> "SeriesFn":
        return SeriesFn(self.coeffs.shift(), self.gamma, self.origin)


def evaluate(f: SeriesFn, x, tol=Fraction(1, 10**12)) -> BoundInterval:
    """Certified enclosure of f(x), width at most tol.

    The series is truncated at a cutoff K with sup|a_n| * zeta_{K+1}
    below tol/2; the partial sum is an exact rational, so the enclosure
    is the partial sum widened by the tail bound on both sides.
    """
    xq = as_fraction(x)
    tolq = as_fraction(tol)
    if tolq <= 0:
        raise DomainError("tolerance must be positive")
    lo, hi = f.domain
    if not (lo <= xq <= hi):
        raise DomainError(f"evaluation point {xq} outside domain [{lo}, {hi}]")
    t = xq - f.origin
    sup = f.coeffs.sup_abs()
    if sup == 0:
        return BoundInterval.exact(0)
    if isinstance(f.coeffs, FiniteSupport):
        # the tail past the support is identically zero: exact sum
        cutoff = len(f.coeffs.coeffs) - 1
        tail = Fraction(0)
    else:
        cutoff = 8
        while True:
            tail = sup * tailmath.zeta(f.gamma, cutoff + 1).hi
            if 2 * tail < tolq:
                break
            cutoff += 8
            if cutoff > 10_000:
                raise ToleranceUnreachable(f"series tail would not fit below {tolq}")
    partial = Fraction(0)
    power = Fraction(1)
    fact = 1
    for n in range(cutoff + 1):
        if n:
            power *= t
            fact *= n
        partial += f.coeffs.coeff(n) * power / fact
    return BoundInterval(partial - tail, partial + tail)


def derivative_sup_bound(f: SeriesFn) -> Fraction:
    """Certified upper bound for sup |f'| on the domain.

    |f'(x)| = |sum a_{n+1} t^n / n!| <= sup|a_n| * e**gamma, and the
    same bound survives any number of further shifts.
    """
    return f.coeffs.sup_abs() * tailmath.exp_enclosure(f.gamma).hi


# ---------------------------------------------------------------------------
# JSON wire format


def _frac_str(q: Fraction) -> str:
    return str(q)


def _frac_list(values: Iterable[Fraction]) -> list:
    return [_frac_str(v) for v in values]


def _parse_frac(text) -> Fraction:
    if isinstance(text, (str, int)) and not isinstance(text, bool):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {text!r}") from exc
    raise DomainError(f"expected a rational string, got {text!r}")


def seq_to_payload(s: CoeffSeq) -> dict:
    if isinstance(s, FiniteSupport):
        return {"kind": "finite", "preamble": _frac_list(s.coeffs)}
    if isinstance(s, EventuallyPeriodic):
        return {
            "kind": "periodic",
            "preamble": _frac_list(s.preamble),
            "period": _frac_list(s.period),
        }
    if isinstance(s, WordEnumeration):
        return {
            "kind": "enum",
            "alphabet": _frac_list(s.alphabet.values),
            "offset": s.offset,
        }
    raise DomainError(f"not a serializable sequence: {s!r}")


def seq_from_payload(payload: dict) -> CoeffSeq:
    kind = payload.get("kind")
    if kind == "finite":
        return FiniteSupport(tuple(_parse_frac(v) for v in payload.get("preamble", [])))
    if kind == "periodic":
        return EventuallyPeriodic(
            tuple(_parse_frac(v) for v in payload.get("preamble", [])),
            tuple(_parse_frac(v) for v in payload["period"]),
        )
    if kind == "enum":
        return WordEnumeration(
            Alphabet(tuple(_parse_frac(v) for v in payload["alphabet"])),
            int(payload.get("offset", 0)),
        )
    raise DomainError(f"unknown sequence kind {kind!r}")


def to_payload(obj: Union[CoeffSeq, SeriesFn]) -> dict:
    if isinstance(obj, SeriesFn):
        payload = seq_to_payload(obj.coeffs)
        payload["gamma"] = _frac_str(obj.gamma)
        payload["origin"] = _frac_str(obj.origin)
        return payload
    return seq_to_payload(obj)


def from_payload(payload: dict) -> Union[CoeffSeq, SeriesFn]:
    seq = seq_from_payload(payload)
    if "gamma" in payload:
        return SeriesFn(
            seq,
            _parse_frac(payload["gamma"]),
            _parse_frac(payload.get("origin", 0)),
        )
    return seq


def to_json(obj: Union[CoeffSeq, SeriesFn]) -> str:
    return json.dumps(to_payload(obj), sort_keys=True, separators=(",", ": "))


def from_json(text: str) -> Union[CoeffSeq, SeriesFn]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise DomainError("expected a JSON object")
    return from_payload(payload)
