"""Decidable comparisons for the log-linear value family.

A `LogLinearValue` denotes the function t -> slope*t + log(ratio) with
rational slope and positive rational ratio; an `EventTime` denotes the
number log(ratio)/delta.  These are exactly the quantities the flow
simulator produces: sizes of flowed lattice vectors and their crossing
times.

Every comparison is decided exactly.  Equality reduces to rational
identities (log of a positive rational is rational only for log 1, and
e^q is rational only for q = 0), so the remaining strict comparisons are
of provably unequal reals and certified interval evaluation terminates.
Large integer power comparisons respect a configurable bit budget and
fall back to the interval route; the `_ex` variants report which path
decided the answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

DEFAULT_BIT_BUDGET = 1_000_000

LT, EQ, GT = -1, 0, 1


def _cmp(a, b):
    return (a > b) - (a < b)


@dataclass(frozen=True)
class LogLinearValue:
    """The function t -> slope*t + log(ratio), one linear piece of a size."""

    slope: Fraction
    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        if self.ratio <= 0:
            raise ValueError("ratio must be positive")

    def shifted(self, factor):
        """Adds log(factor) to the value; factor is a positive rational."""
        return LogLinearValue(self.slope, self.ratio * Fraction(factor))


@dataclass(frozen=True)
class EventTime:
    """The exact number log(ratio)/delta, normalized so delta > 0."""

    ratio: Fraction
    delta: Fraction

    def __post_init__(self):
        r, d = Fraction(self.ratio), Fraction(self.delta)
        if d == 0:
            raise ValueError("delta must be nonzero")
        if r <= 0:
            raise ValueError("ratio must be positive")
        if d < 0:
            r, d = 1 / r, -d
        object.__setattr__(self, "ratio", r)
        object.__setattr__(self, "delta", d)

    def sign(self):
        return _cmp(self.ratio, 1)

    @classmethod
    def from_rational(cls, q):
        """Embed a rational time as an EventTime: t = log(e^... ) is not
        rational, so rationals are kept as Fractions; this helper exists
        only for t = 0."""
        q = Fraction(q)
        if q != 0:
            raise ValueError("only 0 embeds exactly; keep rationals as Fraction")
        return cls(Fraction(1), Fraction(1))


def _bits(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def _iroot(n: int, k: int):
    """Exact integer k-th root of n >= 1, or None."""
    if n <= 0:
        raise ValueError("positive n only")
    if k == 1 or n == 1:
        return n if k == 1 else 1
    hi = 1 << (n.bit_length() // k + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid
    return lo if lo ** k == n else None


def _rational_kth_root(r: Fraction, k: int):
    """Exact k-th root of a positive rational, or None."""
    num = _iroot(r.numerator, k)
    if num is None:
        return None
    den = _iroot(r.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


def _pow_eq(ra: Fraction, p: int, rb: Fraction, q: int) -> bool:
    """Whether ra**p == rb**q for positive rationals and p, q >= 0,
    without computing huge powers."""
    if p == 0:
        return rb == 1 or q == 0
    if q == 0:
        return ra == 1
    g = gcd(p, q)
    p, q = p // g, q // g
    # ra^p = rb^q with coprime p, q  <=>  both are powers of a common c
    c = _rational_kth_root(ra, q)
    if c is None:
        return False
    # avoid c**p when the sizes already rule equality out
    approx_bits = p * (_bits(c) - 2)
    if approx_bits > _bits(rb) + 4:
        return False
    return c ** p == rb


def _interval_sign(constant: Fraction, parts, max_prec=1 << 20):
    """Sign of constant + sum(coeff * log(arg)); the value must be nonzero.

    parts is a sequence of (coeff, arg) with rational coeff and positive
    rational arg.  Certified via mpmath interval arithmetic with doubling
    precision; terminates because the value is nonzero.
    """
    prec = 64
    iv = mpmath.iv
    while prec <= max_prec:
        old = iv.prec
        try:
            iv.prec = prec
            total = iv.mpf(constant.numerator) / iv.mpf(constant.denominator)
            for coeff, arg in parts:
                arg = Fraction(arg)
                c = iv.mpf(coeff.numerator) / iv.mpf(coeff.denominator)
                la = iv.log(iv.mpf(arg.numerator) / iv.mpf(arg.denominator))
                total += c * la
            if total > 0:
                return GT
            if total < 0:
                return LT
        finally:
            iv.prec = old
        prec *= 2
    raise ArithmeticError("interval refinement did not separate a nonzero value")


def compare_eventtime_ex(a: EventTime, b: EventTime, bit_budget=DEFAULT_BIT_BUDGET):
    """Exact ordering of two event times; returns (ordering, path)."""
    # log(ra)/da vs log(rb)/db  <=>  ra^(db*) vs rb^(da*) after clearing
    # the positive rational deltas to positive integers.
    da, db = a.delta, b.delta
    p = db.numerator * da.denominator
    q = da.numerator * db.denominator
    bits_a = p * _bits(a.ratio)
    bits_b = q * _bits(b.ratio)
    if bits_a <= bit_budget and bits_b <= bit_budget:
        return _cmp(a.ratio ** p, b.ratio ** q), "bigint"
    if _pow_eq(a.ratio, p, b.ratio, q):
        return EQ, "interval"
    sign = _interval_sign(Fraction(0),
                          [(Fraction(p), a.ratio), (Fraction(-q), b.ratio)])
    return sign, "interval"


def compare_eventtime(a: EventTime, b: EventTime, bit_budget=DEFAULT_BIT_BUDGET):
    return compare_eventtime_ex(a, b, bit_budget)[0]


def _sign_q_plus_log(qv: Fraction, c: Fraction):
    """Sign of qv + log(c) for rational qv and positive rational c."""
    if c == 1:
        return _cmp(qv, 0)
    if qv == 0:
        return _cmp(c, 1)
    # equality now impossible: log(c) is irrational for rational c != 1
    if qv > 0 and c >= 1:
        return GT
    if qv < 0 and c <= 1:
        return LT
    return _interval_sign(qv, [(Fraction(1), c)])


def compare_loglinear_ex(a: LogLinearValue, b: LogLinearValue, t,
                         bit_budget=DEFAULT_BIT_BUDGET):
    """Exact ordering of a(t) vs b(t) at rational t or EventTime t."""
    ds = a.slope - b.slope
    c = a.ratio / b.ratio
    if isinstance(t, EventTime):
        # sign of ds*log(R)/D + log(c), scaled by the positive D:
        # sign of u*log(R) + v*log(c) with integers u, v (v > 0).
        u = ds.numerator * t.delta.denominator
        v = t.delta.numerator * ds.denominator
        if v < 0:
            u, v = -u, -v
        bits = abs(u) * _bits(t.ratio) + v * _bits(c)
        if bits <= bit_budget:
            value = t.ratio ** u * c ** v
            return _cmp(value, 1), "bigint"
        ru = t.ratio if u >= 0 else 1 / t.ratio
        cv = 1 / c
        if _pow_eq(ru, abs(u), cv, v):
            return EQ, "interval"
        sign = _interval_sign(Fraction(0),
                              [(Fraction(u), t.ratio), (Fraction(v), c)])
        return sign, "interval"
    qv = ds * Fraction(t)
    return _sign_q_plus_log(qv, c), "exact"


def compare_loglinear(a, b, t, bit_budget=DEFAULT_BIT_BUDGET):
    return compare_loglinear_ex(a, b, t, bit_budget)[0]


def loglinear_sign_at(piece: LogLinearValue, t, bit_budget=DEFAULT_BIT_BUDGET):
    """Sign of piece(t) = slope*t + log(ratio)."""
    zero = LogLinearValue(Fraction(0), Fraction(1))
    return compare_loglinear(piece, zero, t, bit_budget)


def compare_time(a, b, bit_budget=DEFAULT_BIT_BUDGET):
    """Exact ordering of two times, each a Fraction or an EventTime."""
    a_et = isinstance(a, EventTime)
    b_et = isinstance(b, EventTime)
    if a_et and b_et:
        return compare_eventtime(a, b, bit_budget)
    if not a_et and not b_et:
        return _cmp(Fraction(a), Fraction(b))
    if a_et:
        return -compare_time(b, a, bit_budget)
    # rational r vs log(R)/D:  r*D vs log(R)
    r = Fraction(a)
    qv = r * b.delta
    # sign of qv - log(R)
    sign = _sign_q_plus_log(qv, 1 / b.ratio)
    return sign


def time_min(times, bit_budget=DEFAULT_BIT_BUDGET):
    best = times[0]
    for t in times[1:]:
        if compare_time(t, best, bit_budget) < 0:
            best = t
    return best


def crossing_time(a: LogLinearValue, b: LogLinearValue):
    """Where a(t) = b(t): an EventTime, 0, or None for parallel pieces.

    Returns (time, kind) with kind "all" when the pieces coincide.
    """
    ds = a.slope - b.slope
    c = b.ratio / a.ratio  # a(t) = b(t)  <=>  ds*t = log(c)
    if ds == 0:
        if c == 1:
            return None, "all"
        return None, "none"
    if c == 1:
        return Fraction(0), "point"
    return EventTime(c, ds), "point"


def time_to_mpf(t, prec=None):
    """mpmath float approximation of a time (Fraction or EventTime)."""
    with mpmath.workprec(prec or mpmath.mp.prec):
        if isinstance(t, EventTime):
            num = mpmath.log(mpmath.mpf(t.ratio.numerator) / t.ratio.denominator)
            return num / (mpmath.mpf(t.delta.numerator) / t.delta.denominator)
        f = Fraction(t)
        return mpmath.mpf(f.numerator) / f.denominator


def time_to_float(t):
    return float(time_to_mpf(t, 64))


def rational_between(t1, t2, bit_budget=DEFAULT_BIT_BUDGET):
    """A Fraction strictly between two times with t1 < t2 (exactly known)."""
    prec = 64
    while True:
        f1 = time_to_mpf(t1, prec)
        f2 = time_to_mpf(t2, prec)
        with mpmath.workprec(prec):
            mid = (f1 + f2) / 2
        cand = Fraction(float(mid)).limit_denominator(10 ** (3 + prec // 16))
        if (compare_time(t1, cand, bit_budget) < 0
                and compare_time(cand, t2, bit_budget) < 0):
            return cand
        prec *= 2
        if prec > (1 << 16):
            raise ArithmeticError("no rational found between times")


def value_to_decimal(qpart: Fraction, ratio: Fraction, digits=30):
    """Decimal string of qpart + log(ratio) to the given precision."""
    with mpmath.workprec(int(digits * 3.4) + 32):
        val = (mpmath.mpf(qpart.numerator) / qpart.denominator
               + mpmath.log(mpmath.mpf(ratio.numerator) / ratio.denominator))
        return mpmath.nstr(val, digits, strip_zeros=False)


def time_to_decimal(t, digits=30):
    with mpmath.workprec(int(digits * 3.4) + 32):
        return mpmath.nstr(time_to_mpf(t), digits, strip_zeros=False)


def eventtime_to_json(t):
    from .scalars import rat_to_str

    if isinstance(t, EventTime):
        return {"log_ratio": rat_to_str(t.ratio), "over": rat_to_str(t.delta)}
    return {"rational": rat_to_str(Fraction(t))}


def eventtime_from_json(data):
    from .scalars import rat_from_str

    if "rational" in data:
        return rat_from_str(data["rational"])
    return EventTime(rat_from_str(data["log_ratio"]), rat_from_str(data["over"]))
