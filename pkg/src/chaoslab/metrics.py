"""Certified metrics on sequence space and on the series functions.

Four distances appear throughout:

* d_lambda on binary sequences: sum |x_i - y_i| / 2^i.
* d_E on coefficient sequences:  sum |a_n - b_n| / (n+1)!.
* weighted product metrics:      sum w_i |x_i - y_i| / 2^i for weight
  families with a certified tail majorant (the factorial family
  w_i = 2^i/(i+1)! reproduces d_E exactly, which is the isometry the
  conjugacy module checks).
* rho_p on series functions:     the L^p distance on [origin,
  origin + gamma], p in [1, inf].

Everything returns a BoundInterval that provably contains the true
value.  Series metrics are computed on an exact rational truncation of
the coefficient difference; the discarded tail is below
sup|a_n - b_n| * zeta_{K+1}(gamma) pointwise, which inflates an L^p
enclosure by at most gamma^(1/p) times that bound.

For the truncated polynomial difference D:

* p = inf: branch-and-bound for sup|D| with interval Horner plus a
  centered form on panels.  This is grid + local Lipschitz
  certification, refined adaptively; a uniform grid with one global
  Lipschitz constant cannot reach width 1e-9 in realistic time.
* integer p: |D|^p integrates exactly.  Even p needs no sign analysis
  at all; odd p gets a certified sign partition, and panels still
  straddling a root contribute [|int D^p|, h * sup|D|^p].
* other p: adaptive panels with certified endpoint trapezoid and a
  second-derivative correction where D is sign-definite, crude
  range-times-width bounds across roots.  Pointwise powers go through
  the interval power helper, so no uncertified rounding enters.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from . import tailmath
from .coeffspace import (
    BINARY,
    CoeffSeq,
    SeriesFn,
    as_preamble_period,
    same_stream,
)
from .errors import DomainError, ToleranceUnreachable
from .intervals import BoundInterval, PowerFn, _float_down, _float_up, as_fraction, power

DEFAULT_TOL = Fraction(1, 10**9)

_MAX_PANELS = 200_000


# ---------------------------------------------------------------------------
# Lp specification


@dataclass(frozen=True)
class LpSpec:
    """Which L^p norm, on a window of which length."""

    p: Union[Fraction, float]
    gamma: Fraction

    def __post_init__(self):
        if isinstance(self.p, float) and math.isinf(self.p) and self.p > 0:
            object.__setattr__(self, "p", math.inf)
        else:
            p = as_fraction(self.p)
            if p < 1:
                raise DomainError(f"p must be at least 1, got {p}")
            object.__setattr__(self, "p", p)
        object.__setattr__(self, "gamma", as_fraction(self.gamma))
        if self.gamma <= 0:
            raise DomainError("gamma must be positive")

    @property
    def is_sup(self) -> bool:
        return self.p == math.inf

    @property
    def inv_p(self) -> Fraction:
        """1/p, with 1/inf = 0."""
        return Fraction(0) if self.is_sup else 1 / self.p

    def gamma_pow_inv_p(self) -> BoundInterval:
        """Certified gamma**(1/p); exact when 1/p is an integer."""
        return power(self.gamma, self.inv_p)


# ---------------------------------------------------------------------------
# sequence-space metrics


def _require_binary(s: CoeffSeq, name: str) -> None:
    try:
        ok = s.in_EF(BINARY)
    except DomainError:
        ok = False
    if not ok:
        raise DomainError(f"{name} must have coefficients in {{0, 1}}")


def _geometric_block_sum(
    pre: Sequence[Fraction], per: Sequence[Fraction]
) -> Fraction:
    """Exact sum of c_i / 2^i for an eventually periodic sequence c."""
    total = Fraction(0)
    for i, c in enumerate(pre):
        total += Fraction(c, 2**i)
    s = len(pre)
    q = len(per)
    block = sum(Fraction(c, 2**r) for r, c in enumerate(per))
    total += Fraction(block, 2**s) / (1 - Fraction(1, 2**q))
    return total


def d_lambda(x: CoeffSeq, y: CoeffSeq, tol=Fraction(1, 10**12)) -> BoundInterval:
    """Certified d_lambda(x, y) = sum |x_i - y_i| / 2^i on binary sequences.

    Exact (width zero) whenever both arguments have eventually periodic
    tails; otherwise an exact partial sum plus the geometric tail bound
    2^(1-K).
    """
    _require_binary(x, "x")
    _require_binary(y, "y")
    tolq = as_fraction(tol)
    if tolq <= 0:
        raise DomainError("tolerance must be positive")
    px, py = as_preamble_period(x), as_preamble_period(y)
    if px is not None and py is not None:
        sx = len(px[0])
        sy = len(py[0])
        qx, qy = len(px[1]), len(py[1])
        s = max(sx, sy)
        q = math.lcm(qx, qy)
        pre = tuple(abs(x.coeff(i) - y.coeff(i)) for i in range(s))
        per = tuple(abs(x.coeff(s + i) - y.coeff(s + i)) for i in range(q))
        return BoundInterval.exact(_geometric_block_sum(pre, per))
    cutoff = 4
    while Fraction(2, 2**cutoff) >= tolq:
        cutoff += 4
    partial = sum(
        Fraction(abs(x.coeff(i) - y.coeff(i)), 2**i) for i in range(cutoff)
    )
    return BoundInterval(partial, partial + Fraction(2, 2**cutoff))


def diff_sup_abs(a: CoeffSeq, b: CoeffSeq) -> Fraction:
    """Certified upper bound for sup_n |a_n - b_n|; exact when both
    sequences have eventually periodic tails."""
    if same_stream(a, b):
        return Fraction(0)
    pa, pb = as_preamble_period(a), as_preamble_period(b)
    if pa is not None and pb is not None:
        s = max(len(pa[0]), len(pb[0]))
        q = math.lcm(len(pa[1]), len(pb[1]))
        return max(abs(a.coeff(i) - b.coeff(i)) for i in range(s + q))
    return a.sup_abs() + b.sup_abs()


def _difference_support_end(a: CoeffSeq, b: CoeffSeq) -> Optional[int]:
    """Index past which a - b is identically zero, or None if unknown.

    Both tails eventually periodic with matching values over one full
    common period past the preambles means they match forever after."""
    pa, pb = as_preamble_period(a), as_preamble_period(b)
    if pa is None or pb is None:
        return None
    s = max(len(pa[0]), len(pb[0]))
    q = math.lcm(len(pa[1]), len(pb[1]))
    if all(a.coeff(i) == b.coeff(i) for i in range(s, s + q)):
        return s
    return None


def d_E(a: CoeffSeq, b: CoeffSeq, tol=Fraction(1, 10**12)) -> BoundInterval:
    """Certified d_E(a, b) = sum |a_n - b_n| / (n+1)!.

    Exact partial sum; the tail past index K is at most
    sup|a_n - b_n| * eta_{K+2}; exact finite sum when the difference
    has finite support.
    """
    tolq = as_fraction(tol)
    if tolq <= 0:
        raise DomainError("tolerance must be positive")
    dsup = diff_sup_abs(a, b)
    if dsup == 0:
        return BoundInterval.exact(0)
    zero_past = _difference_support_end(a, b)
    if zero_past is not None:
        # the difference vanishes past a known index: finite exact sum
        cutoff = zero_past
        tail = Fraction(0)
    else:
        cutoff = 8
        while True:
            tail = dsup * tailmath.eta(cutoff + 2).hi
            if 2 * tail < tolq:
                break
            cutoff += 8
            if cutoff > 4_000:
                raise ToleranceUnreachable(f"d_E tail would not fit below {tolq}")
    fact = 1
    partial = Fraction(0)
    for n in range(cutoff + 1):
        fact *= n + 1
        partial += abs(a.coeff(n) - b.coeff(n)) / fact
    return BoundInterval(partial, partial + tail)


@dataclass(frozen=True)
class Weights:
    """Coordinate weight family w_i for sum w_i |x_i - y_i| / 2^i.

    tail_majorant(K, dsup) must return a certified upper bound for
    sum_{i >= K} w_i * dsup / 2^i; this is exactly the bounded-diameter
    hypothesis the product metric needs, so families without one are
    rejected up front.
    """

    name: str
    factor: Callable[[int], Fraction]
    tail_majorant: Callable[[int, Fraction], Fraction]


UNIT_WEIGHTS = Weights(
    name="unit",
    factor=lambda i: Fraction(1),
    tail_majorant=lambda K, dsup: dsup * Fraction(2, 2**K),
)

# w_i = 2^i/(i+1)! turns the product metric into d_E term by term.
FACTORIAL_WEIGHTS = Weights(
    name="factorial",
    factor=lambda i: Fraction(2**i, math.factorial(i + 1)),
    tail_majorant=lambda K, dsup: dsup * tailmath.eta(K + 1).hi,
)


def weighted_product_metric(
    x: CoeffSeq, y: CoeffSeq, weights: Weights, tol=Fraction(1, 10**12)
) -> BoundInterval:
    """Certified sum_i w_i |x_i - y_i| / 2^i for a bounded weight family."""
    if not isinstance(weights, Weights) or weights.tail_majorant is None:
        raise DomainError("weights must come with a certified tail majorant")
    tolq = as_fraction(tol)
    if tolq <= 0:
        raise DomainError("tolerance must be positive")
    dsup = diff_sup_abs(x, y)
    if dsup == 0:
        return BoundInterval.exact(0)
    cutoff = 8
    while True:
        tail = weights.tail_majorant(cutoff, dsup)
        if tail < 0:
            raise DomainError("tail majorant must be nonnegative")
        if 2 * tail < tolq:
            break
        cutoff += 8
        if cutoff > 4_000:
            raise ToleranceUnreachable(
                f"weighted tail would not fit below {tolq}"
            )
    partial = sum(
        weights.factor(i) * abs(x.coeff(i) - y.coeff(i)) / 2**i
        for i in range(cutoff)
    )
    return BoundInterval(partial, partial + tail)


# ---------------------------------------------------------------------------
# polynomial scaffolding for the L^p work


class _Poly:
    """Dense polynomial over Fraction in the monomial basis."""

    __slots__ = ("coeffs", "_deriv")

    def __init__(self, coeffs: Sequence[Fraction]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs
        self._deriv = None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_interval(self, box: BoundInterval) -> BoundInterval:
        if not self.coeffs:
            return BoundInterval.exact(0)
        acc = BoundInterval.exact(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * box + c
        if box.width == 0:
            return acc
        # centered form: f(mid) + f'(box) * (box - mid) is usually much
        # tighter on narrow panels; keep the intersection.
        mid = box.mid
        centered = BoundInterval.exact(self(mid)) + self.derivative().eval_interval_plain(
            box
        ) * (box - mid)
        return acc.intersect(centered) if acc.intersects(centered) else acc

    def eval_interval_plain(self, box: BoundInterval) -> BoundInterval:
        acc = BoundInterval.exact(0)
        for c in reversed(self.coeffs):
            acc = acc * box + c
        return acc

    def derivative(self) -> "_Poly":
        if self._deriv is None:
            self._deriv = _Poly([n * c for n, c in enumerate(self.coeffs)][1:])
        return self._deriv

    def antiderivative(self) -> "_Poly":
        return _Poly([Fraction(0)] + [c / (n + 1) for n, c in enumerate(self.coeffs)])

    def __pow__(self, k: int) -> "_Poly":
        out = _Poly([Fraction(1)])
        base = self
        while k:
            if k & 1:
                out = out._mul(base)
            base = base._mul(base)
            k >>= 1
        return out

    def _mul(self, other: "_Poly") -> "_Poly":
        if self.is_zero() or other.is_zero():
            return _Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return _Poly(out)


def _truncated_difference(f: SeriesFn, g: SeriesFn, cutoff: int) -> _Poly:
    """D(t) = sum_{n <= cutoff} (a_n - b_n) t^n / n! in the local variable."""
    fact = 1
    coeffs = []
    for n in range(cutoff + 1):
        if n:
            fact *= n
        coeffs.append((f.coeffs.coeff(n) - g.coeffs.coeff(n)) / fact)
    return _Poly(coeffs)


def _sup_abs_on(poly: _Poly, gamma: Fraction, tol: Fraction) -> BoundInterval:
    """Certified enclosure of sup_{[0, gamma]} |poly|, width < tol."""
    if poly.is_zero():
        return BoundInterval.exact(0)
    lower = max(abs(poly(Fraction(0))), abs(poly(gamma)), abs(poly(gamma / 2)))
    first = abs(poly.eval_interval(BoundInterval(Fraction(0), gamma)))
    heap: List[Tuple[Fraction, Fraction, int, BoundInterval, BoundInterval]] = []
    counter = 0
    heapq.heappush(heap, (-first.hi, Fraction(0), counter, BoundInterval(Fraction(0), gamma), first))
    panels = 1
    while heap:
        neg_hi, _, _, box, bound = heapq.heappop(heap)
        panel_hi = -neg_hi
        if panel_hi <= lower:
            # nothing remaining can beat the achieved lower bound
            return BoundInterval(lower, max(lower, panel_hi))
        if panel_hi - lower < tol:
            return BoundInterval(lower, panel_hi)
        mid = box.mid
        lower = max(lower, abs(poly(mid)))
        for child in (BoundInterval(box.lo, mid), BoundInterval(mid, box.hi)):
            b = abs(poly.eval_interval(child))
            if b.hi > lower:
                counter += 1
                heapq.heappush(heap, (-b.hi, child.lo, counter, child, b))
        panels += 2
        if panels > _MAX_PANELS:
            raise ToleranceUnreachable(
                f"sup refinement exceeded {_MAX_PANELS} panels at tol={tol}"
            )
    return BoundInterval(lower, lower)


def _integral_abs_pow_int(
    poly: _Poly, gamma: Fraction, p: int, tol: Fraction
) -> BoundInterval:
    """Certified enclosure of int_0^gamma |poly|^p dt for integer p >= 1."""
    if poly.is_zero():
        return BoundInterval.exact(0)
    ppoly = poly**p
    anti = ppoly.antiderivative()
    if p % 2 == 0:
        return BoundInterval.exact(anti(gamma) - anti(Fraction(0)))
    # odd p: |poly|^p = sign(poly) * poly^p, so sign-definite panels
    # integrate exactly and only root-straddling panels carry width
    settled = Fraction(0)
    pending = Fraction(0)
    heap: List[Tuple[Fraction, Fraction, int, BoundInterval, Fraction]] = []
    counter = 0

    def classify(box: BoundInterval):
        nonlocal settled, pending, counter
        s = poly.eval_interval(box)
        lower = abs(anti(box.hi) - anti(box.lo))
        if s.lo >= 0 or s.hi <= 0:
            settled += lower
            return
        slack = box.width * s.mag**p - lower
        counter += 1
        pending += slack
        heapq.heappush(heap, (-slack, box.lo, counter, box, lower))

    classify(BoundInterval(Fraction(0), gamma))
    panels = 1
    while heap and pending >= tol:
        neg_slack, _, _, box, _ = heapq.heappop(heap)
        pending += neg_slack
        mid = box.mid
        classify(BoundInterval(box.lo, mid))
        classify(BoundInterval(mid, box.hi))
        panels += 2
        if panels > _MAX_PANELS:
            raise ToleranceUnreachable(
                f"sign partition exceeded {_MAX_PANELS} panels at tol={tol}"
            )
    lo = settled + sum(item[4] for item in heap)
    return BoundInterval(lo, lo + pending)


# --- outward-rounded double intervals, used only by the fractional-p
# quadrature below.  IEEE +-*/ are exactly rounded, so nudging each
# computed endpoint one ulp outward with nextafter keeps the enclosure
# rigorous while running ~50x faster than Fraction arithmetic (whose
# gcd calls dominate the profile at realistic panel counts).

_INF = math.inf


def _fdn(x: float) -> float:
    return math.nextafter(x, -_INF)


def _fup(x: float) -> float:
    return math.nextafter(x, _INF)


def _fi(q: Fraction) -> Tuple[float, float]:
    return (_float_down(q), _float_up(q))


def _fi_horner(coeffs, xlo: float, xhi: float) -> Tuple[float, float]:
    lo, hi = coeffs[-1]
    for clo, chi in coeffs[-2::-1]:
        p0 = lo * xlo
        p1 = lo * xhi
        p2 = hi * xlo
        p3 = hi * xhi
        lo = _fdn(_fdn(min(p0, p1, p2, p3)) + clo)
        hi = _fup(_fup(max(p0, p1, p2, p3)) + chi)
    return (lo, hi)


def _fi_mul(a, b) -> Tuple[float, float]:
    p0 = a[0] * b[0]
    p1 = a[0] * b[1]
    p2 = a[1] * b[0]
    p3 = a[1] * b[1]
    return (_fdn(min(p0, p1, p2, p3)), _fup(max(p0, p1, p2, p3)))


def _fi_div(a, b) -> Tuple[float, float]:
    # caller guarantees 0 is outside b
    p0 = a[0] / b[0]
    p1 = a[0] / b[1]
    p2 = a[1] / b[0]
    p3 = a[1] / b[1]
    return (_fdn(min(p0, p1, p2, p3)), _fup(max(p0, p1, p2, p3)))


def _integral_abs_pow_frac(
    poly: _Poly, gamma: Fraction, p: Fraction, tol: Fraction
) -> BoundInterval:
    """Certified enclosure of int_0^gamma |poly|^p dt for fractional p > 1.

    Panels where poly is sign-definite use the endpoint trapezoid with a
    certified second-derivative correction for g = |poly|^p; panels
    straddling a root fall back to width * range bounds (they shrink
    superlinearly, since |poly|^p is tiny near its roots).  All panel
    bookkeeping runs in outward-rounded doubles; only the powers touch
    mpmath.  The double bookkeeping floors the reachable tolerance near
    1e-14 * integral, far below anything the callers request.
    """
    if poly.is_zero():
        return BoundInterval.exact(0)
    pcoef = [_fi(c) for c in poly.coeffs]
    dcoef = [_fi(c) for c in poly.derivative().coeffs] or [(0.0, 0.0)]
    ddcoef = [_fi(c) for c in poly.derivative().derivative().coeffs] or [(0.0, 0.0)]
    pw = PowerFn(p)
    pp_fi = _fi(p * (p - 1))
    p_fi = _fi(p)
    twelfth = _fi(Fraction(1, 12))
    g_cache: dict = {}
    t_cache: dict = {}

    def t_floats(t: Fraction) -> Tuple[float, float]:
        got = t_cache.get(t)
        if got is None:
            got = t_cache[t] = _fi(t)
        return got

    def g_point(t: Fraction, tf) -> Tuple[float, float]:
        got = g_cache.get(t)
        if got is None:
            slo, shi = _fi_horner(pcoef, tf[0], tf[1])
            alo = max(0.0, slo, -shi)
            ahi = max(-slo, shi)
            got = g_cache[t] = pw.bounds_floats(alo, ahi)
        return got

    def panel_enclosure(u: Fraction, v: Fraction) -> Tuple[float, float]:
        uf = t_floats(u)
        vf = t_floats(v)
        xlo, xhi = uf[0], vf[1]
        s = _fi_horner(pcoef, xlo, xhi)
        d1 = _fi_horner(dcoef, xlo, xhi)
        # centered form f(m) + f'(X)(X - m) is much tighter on narrow
        # panels; intersecting two valid enclosures is still valid
        m = min(max(0.5 * (xlo + xhi), xlo), xhi)
        fm = _fi_horner(pcoef, m, m)
        dev = (_fdn(xlo - m), _fup(xhi - m))
        cf_t = _fi_mul(d1, dev)
        s = (max(s[0], _fdn(fm[0] + cf_t[0])), min(s[1], _fup(fm[1] + cf_t[1])))
        hq = v - u
        h = _fi(hq)
        sa = (max(0.0, s[0], -s[1]), max(-s[0], s[1]))
        if sa[1] <= 0.0:
            return (0.0, 0.0)
        if not (s[0] > 0.0 or s[1] < 0.0):
            # straddles a root: width * range of |s|^p
            return _fi_mul(pw.bounds_floats(sa[0], sa[1]), h)
        gu = g_point(u, uf)
        gv = g_point(v, vf)
        if d1[0] > 0.0 or d1[1] < 0.0:
            # monotone panel: the range of |s|^p is the endpoint hull
            sap = (min(gu[0], gv[0]), max(gu[1], gv[1]))
        else:
            sap = pw.bounds_floats(sa[0], sa[1])
        crude = _fi_mul(sap, h)
        # trapezoid: int = h/2 (g(u) + g(v)) - h^3/12 g''(theta)
        gsum = (_fdn(gu[0] + gv[0]), _fup(gu[1] + gv[1]))
        trap = _fi_mul(gsum, (0.5 * h[0], 0.5 * h[1]))
        d2 = _fi_horner(ddcoef, xlo, xhi)
        # g'' = p(p-1)|s|^(p-2) s'^2 + p |s|^(p-1) s'' * sign(s); lower
        # powers of |s| come from sap by division (sa > 0 here)
        q1 = _fi_div(sap, sa)
        q2 = _fi_div(q1, sa)
        d1sq = _fi_mul(d1, d1)
        t1 = _fi_mul(_fi_mul(q2, d1sq), pp_fi)
        t2 = _fi_mul(_fi_mul(q1, d2), p_fi)
        if s[0] > 0.0:
            gpp = (_fdn(t1[0] + t2[0]), _fup(t1[1] + t2[1]))
        else:
            gpp = (_fdn(t1[0] - t2[1]), _fup(t1[1] - t2[0]))
        h3 = _fi_mul(_fi_mul(h, h), h)
        delta = _fi_mul(_fi_mul(h3, gpp), twelfth)
        lo = max(_fdn(trap[0] - delta[1]), crude[0], 0.0)
        hi = min(_fup(trap[1] - delta[0]), crude[1])
        if hi < lo:
            return (max(0.0, crude[0]), crude[1])
        return (lo, hi)

    heap: List[tuple] = []
    counter = 0
    pending = 0.0
    tol_dn = _float_down(tol)

    def push(u: Fraction, v: Fraction):
        nonlocal counter, pending
        lo, hi = panel_enclosure(u, v)
        counter += 1
        w = _fup(hi - lo)
        pending = _fup(pending + w)
        heapq.heappush(heap, (-w, counter, u, v, lo, hi))

    push(Fraction(0), gamma)
    panels = 1
    splits = 0
    while pending >= tol_dn:
        neg_w, _, u, v, _, _ = heapq.heappop(heap)
        pending = _fup(pending + neg_w)
        mid = (u + v) / 2
        push(u, mid)
        push(mid, v)
        panels += 2
        if panels > _MAX_PANELS:
            raise ToleranceUnreachable(
                f"fractional-power quadrature exceeded {_MAX_PANELS} panels at tol={tol}"
            )
        splits += 1
        if splits % 2048 == 0:
            # the running total accrues one ulp of drift per update;
            # re-sum so the drift cannot stall the stopping test
            pending = 0.0
            for item in heap:
                pending = _fup(pending + _fup(item[5] - item[4]))
    lo_sum = 0.0
    hi_sum = 0.0
    for item in heap:
        lo_sum = _fdn(lo_sum + item[4])
        hi_sum = _fup(hi_sum + item[5])
    return BoundInterval(max(Fraction(0), Fraction(lo_sum)), Fraction(hi_sum))


def _norm_of_poly(poly: _Poly, spec: LpSpec, tol: Fraction) -> BoundInterval:
    """Certified L^p norm of a polynomial on [0, gamma]."""
    if spec.is_sup:
        return _sup_abs_on(poly, spec.gamma, tol)
    p = spec.p
    if p == 1:
        return _integral_abs_pow_int(poly, spec.gamma, 1, tol)
    # the root step can widen the integral enclosure (badly so when the
    # integral sits near zero), so refine until the rooted width fits
    int_tol = tol
    guard = 0
    while True:
        if p.denominator == 1:
            integral = _integral_abs_pow_int(poly, spec.gamma, int(p), int_tol)
        else:
            integral = _integral_abs_pow_frac(poly, spec.gamma, p, int_tol)
        out = power(integral, 1 / p)
        if out.width < tol or integral.width == 0:
            return out
        shrink = min(Fraction(1, 4), tol / out.width / 2)
        int_tol = int_tol * shrink
        guard += 1
        if guard > 60:
            raise ToleranceUnreachable(f"norm width stuck above {tol}")


def rho_p(f: SeriesFn, g: SeriesFn, spec: LpSpec, tol=DEFAULT_TOL) -> BoundInterval:
    """Certified L^p distance of two series functions on a shared window.

    The coefficient difference is truncated where the pointwise tail
    sup|a_n - b_n| * zeta_{K+1} stops mattering at the requested
    tolerance; the polynomial part is handled exactly or by certified
    quadrature, and the tail inflates the enclosure by at most
    gamma^(1/p) times the pointwise bound.
    """
    if f.gamma != g.gamma or f.origin != g.origin:
        raise DomainError("rho_p needs a shared domain (gamma and origin)")
    if f.gamma != spec.gamma:
        raise DomainError(f"LpSpec gamma {spec.gamma} != function gamma {f.gamma}")
    tolq = as_fraction(tol)
    if tolq <= 0:
        raise DomainError("tolerance must be positive")
    if same_stream(f.coeffs, g.coeffs):
        return BoundInterval.exact(0)
    dsup = diff_sup_abs(f.coeffs, g.coeffs)
    if dsup == 0:
        return BoundInterval.exact(0)
    gp = spec.gamma_pow_inv_p()
    cutoff = 8
    while True:
        tail_slack = dsup * tailmath.zeta(spec.gamma, cutoff + 1).hi * gp.hi
        if 4 * tail_slack < tolq:
            break
        cutoff += 8
        if cutoff > 4_000:
            raise ToleranceUnreachable(f"rho_p tail would not fit below {tolq}")
    poly = _truncated_difference(f, g, cutoff)
    norm = _norm_of_poly(poly, spec, tolq / 2)
    lo = norm.lo - tail_slack
    return BoundInterval(max(Fraction(0), lo), norm.hi + tail_slack)


def rho_1_lower_bound(f: SeriesFn, g: SeriesFn, pieces: int = 12) -> Fraction:
    """Cheap certified lower bound on rho_1(f, g), exact arithmetic only.

    Summing |integral over a piece| of the truncated difference across
    a partition of [0, gamma] bounds the L^1 norm from below; the
    discarded coefficient tail can shift the integral by at most gamma
    times its pointwise sup.  Lets separation checks skip the full
    quadrature when the bound already clears their threshold.
    """
    if f.gamma != g.gamma or f.origin != g.origin:
        raise DomainError("rho_1_lower_bound needs a shared domain")
    if same_stream(f.coeffs, g.coeffs):
        return Fraction(0)
    dsup = diff_sup_abs(f.coeffs, g.coeffs)
    if dsup == 0:
        return Fraction(0)
    gamma = f.gamma
    cutoff = 12
    tail = dsup * tailmath.zeta(gamma, cutoff + 1).hi
    anti = _truncated_difference(f, g, cutoff).antiderivative()
    total = Fraction(0)
    prev = anti(Fraction(0))
    for i in range(1, pieces + 1):
        cur = anti(gamma * Fraction(i, pieces))
        total += abs(cur - prev)
        prev = cur
    return max(Fraction(0), total - gamma * tail)


def series_norm(f: SeriesFn, spec: LpSpec, tol=DEFAULT_TOL) -> BoundInterval:
    """Certified ||f||_p, i.e. rho_p against the zero function."""
    from .coeffspace import FiniteSupport

    zero = SeriesFn(FiniteSupport(()), f.gamma, f.origin)
    return rho_p(f, zero, spec, tol)


def holder_compare(
    f: SeriesFn, p, q, tol=Fraction(1, 10**6)
) -> Tuple[BoundInterval, BoundInterval]:
    """Certified pair (||f||_p, gamma^(1/p - 1/q) ||f||_q) for p <= q.

    The first component never exceeds the second (norm comparison on a
    finite window); callers assert that at the enclosure level.
    """
    pq = math.inf if isinstance(p, float) and math.isinf(p) else as_fraction(p)
    qq = math.inf if isinstance(q, float) and math.isinf(q) else as_fraction(q)
    inv_p = Fraction(0) if pq == math.inf else 1 / pq
    inv_q = Fraction(0) if qq == math.inf else 1 / qq
    if inv_p < inv_q:
        raise DomainError(f"need p <= q, got p={p}, q={q}")
    lhs = series_norm(f, LpSpec(pq, f.gamma), tol)
    rhs = series_norm(f, LpSpec(qq, f.gamma), tol) * power(f.gamma, inv_p - inv_q)
    return lhs, rhs


# ---------------------------------------------------------------------------
# continuity recipes (metric-to-metric moduli)


def continuity_delta_l1(gamma, eps, rel_tol=tailmath.DEFAULT_REL_TOL) -> Tuple[int, Fraction]:
    """Constructive delta for: rho_1 below delta forces d_E below eps.

    Valid for sequences whose coefficient disagreements have magnitude
    at least 1 (integer alphabets): find N at least the separation index
    with eta_N below eps, and take delta = xi_{N+1}.  An L1 distance
    under delta forces agreement through N, and agreement through N
    bounds d_E by eta_{N+2} < eta_N < eps.
    """
    g = as_fraction(gamma)
    epsq = as_fraction(eps)
    if epsq <= 0:
        raise DomainError("eps must be positive")
    n = tailmath.compute_m_gamma(g, rel_tol)
    while not tailmath.eta(n, rel_tol).hi < epsq:
        n += 1
        if n > 4_000:
            raise ToleranceUnreachable("eta never certified below eps")
    delta = tailmath.xi(g, n + 1, rel_tol).lo
    if delta <= 0:
        raise ToleranceUnreachable("xi lower bound not positive; tighten rel_tol")
    return n, delta


def continuity_delta_dE(gamma, eps, rel_tol=tailmath.DEFAULT_REL_TOL) -> Tuple[int, Fraction]:
    """Constructive delta for: d_E below delta forces rho_inf below eps.

    Valid for binary sequences (unit coefficient range): find N with
    zeta_N below eps and take delta = 1/(N+1)!.  A d_E distance under
    delta forces agreement through N, and then the sup distance is at
    most zeta_{N+1} < zeta_N < eps.
    """
    g = as_fraction(gamma)
    epsq = as_fraction(eps)
    if epsq <= 0:
        raise DomainError("eps must be positive")
    n = 1
    while not tailmath.zeta(g, n, rel_tol).hi < epsq:
        n += 1
        if n > 4_000:
            raise ToleranceUnreachable("zeta never certified below eps")
    return n, Fraction(1, math.factorial(n + 1))
