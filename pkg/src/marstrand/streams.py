"""Reals given by certified dyadic enclosures at any requested precision.

Every stream implements ``_compute(n)`` returning a raw closed enclosure
``(lo, hi, e)`` of width at most ``2**-n``.  Results are memoized at a
coarse ladder of precisions so that a stream answers the same way for a
given ``n`` no matter which queries came before.

Trigonometric values come from fixed-point Taylor series with every floor
counted as an error unit; pi comes from Machin's formula.
"""

import re
from fractions import Fraction
from math import isqrt

from gmpy2 import mpz

from .dyadic import Dyadic, DyadicInterval, ceil_shift, floor_shift

_CACHE_SLOTS = 6


def _level(n):
    """Precision actually computed when ``n`` bits are requested."""
    m = max(n + 1, 64)
    step = 1 << max(m.bit_length() - 3, 0)
    return -(-m // step) * step


class RealStream:
    """A real number available to any precision through certified enclosures."""

    exact = None

    def __init__(self):
        self._cache = {}

    def _compute(self, n):
        raise NotImplementedError

    def _enclose(self, n):
        """Raw enclosure ``(lo, hi, e)`` with ``(hi - lo) / 2**e <= 2**-n``."""
        if self.exact is not None:
            q = self.exact
            num, den = mpz(q.numerator) << max(n, 0), mpz(q.denominator)
            return num // den, -(-num // den), max(n, 0)
        lev = _level(n)
        hit = self._cache.get(lev)
        if hit is None:
            hit = self._compute(lev)
            if len(self._cache) >= _CACHE_SLOTS:
                self._cache.pop(next(iter(self._cache)))
            self._cache[lev] = hit
        return hit

    def query(self, n):
        """Closed interval of width at most ``2**-n`` containing the value.

        Successive precisions give nested intervals.
        """
        if self.exact is not None:
            lo, hi, e = self._enclose(n)
            return DyadicInterval.from_raw(lo, hi, e, closed=True)
        lo, hi, e = self._enclose(n + 4)
        if e < n + 4:
            lo, hi, e = lo << (n + 4 - e), hi << (n + 4 - e), n + 4
        # midpoint c on grid e+1, then c -/+ 2^-(n+1)
        c = lo + hi
        r = mpz(1) << (e - n)
        return DyadicInterval.from_raw(c - r, c + r, e + 1, closed=True)

    def sign(self):
        """+1, -1 or 0 once an enclosure excludes zero (0 only for exact zero)."""
        if self.exact is not None:
            return (self.exact > 0) - (self.exact < 0)
        n = 8
        while n <= 1 << 16:
            lo, hi, _ = self._enclose(n)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            n *= 2
        raise ArithmeticError("sign not decided; value may be zero")

    def to_float(self):
        lo, hi, e = self._enclose(60)
        return float(Fraction(int(lo + hi), 1 << (e + 1)))

    def __mul__(self, other):
        return product(self, as_stream(other))

    __rmul__ = __mul__

    def __neg__(self):
        return negate(self)

    def __abs__(self):
        return absolute(self)


class ExactStream(RealStream):
    """A known rational, exposed through the stream interface."""

    def __init__(self, value):
        super().__init__()
        if isinstance(value, Dyadic):
            value = value.to_fraction()
        self.exact = Fraction(value)

    def __repr__(self):
        return f"ExactStream({self.exact})"


class OpaqueStream(RealStream):
    """Wraps a stream and hides any exact value, forcing enclosure arithmetic."""

    def __init__(self, inner):
        super().__init__()
        self.inner = inner

    def _compute(self, n):
        inner = self.inner
        if inner.exact is not None:
            return inner._enclose(n)
        return inner._compute(n)

    def __repr__(self):
        return f"OpaqueStream({self.inner!r})"


def _atan_inv(m, W):
    """Fixed-point atan(1/m) * 2^W and an error bound in units of 2^-W."""
    p = (mpz(1) << W) // m
    m2 = m * m
    total, k = mpz(0), 0
    while p:
        t = p // (2 * k + 1)
        total = total - t if k & 1 else total + t
        p //= m2
        k += 1
    return total, 2 * k + 1


class PiStream(RealStream):
    def _compute(self, n):
        W = n + 2 * n.bit_length() + 12
        while True:
            a, ea = _atan_inv(5, W)
            b, eb = _atan_inv(239, W)
            err = 16 * ea + 4 * eb
            c = 16 * a - 4 * b
            if 2 * err <= (mpz(1) << (W - n)):
                return c - err, c + err, W
            W += 16

    def __repr__(self):
        return "PiStream()"


PI = PiStream()


def _cos_sin_fixed(cn, ce, W):
    """cos and sin of ``cn / 2**ce`` (|value| <= 1) in W-bit fixed point.

    Returns ``(C, S, err)`` with both results within ``err`` units of 2^-W.
    All terms are magnitudes built with floors, so each term is short by at
    most four units and the alternating tail is below the first omitted term.
    """
    neg = cn < 0
    cn = abs(mpz(cn))
    if ce <= W:
        X, extra = cn << (W - ce), 0
    else:
        X, extra = cn >> (ce - W), 1
    one = mpz(1) << W
    x2 = (X * X) >> W
    C, t, k = one, one, 1
    while True:
        t = ((t * x2) >> W) // ((2 * k - 1) * (2 * k))
        if not t:
            break
        C = C - t if k & 1 else C + t
        k += 1
    S, t, j = X, X, 1
    while True:
        t = ((t * x2) >> W) // ((2 * j) * (2 * j + 1))
        if not t:
            break
        S = S - t if j & 1 else S + t
        j += 1
    err = 4 * (max(k, j) + 2) + extra
    return C, (-S if neg else S), err


def _cos_sin_interval(cn, ce, rad, n):
    """Enclosures of cos and sin at precision n for x = cn/2^ce +- rad/2^ce.

    Requires |x| <= 4.  The argument is halved until it is below about
    2^-sqrt(n)/2, which keeps the series short, then doubled back; each
    doubling costs two guard bits.
    """
    r = isqrt(max(n, 1)) // 2
    bound = mpz(1) << ce
    h = r
    while abs(cn) > bound << (h - r):
        h += 1
    W = n + 2 * max(n, 1).bit_length() + 24 + 2 * h
    C, S, err = _cos_sin_fixed(cn, ce + h, W)
    for _ in range(h):
        C, S = (C * C - S * S) >> W, (2 * C * S) >> W
        err = 4 * err + 4
    # Lipschitz 1 for both functions
    err += ceil_shift(mpz(rad), ce - W) + 1
    return (C - err, C + err, W), (S - err, S + err, W)


class TrigPiStream(RealStream):
    """``sign * f(g*pi)`` for f in {cos, sin} and rational g in [0, 1/4]."""

    def __init__(self, g, func, sign=1):
        super().__init__()
        self.g, self.func, self.sgn = Fraction(g), func, sign

    def _compute(self, n):
        u, v = self.g.numerator, self.g.denominator
        m = n + 8
        while True:
            pl, ph, pe = PI._enclose(m)
            cn = (u * (pl + ph)) // (2 * v)
            rad = -(-(u * (ph - pl)) // (2 * v)) + 1
            cos_iv, sin_iv = _cos_sin_interval(cn, pe, rad, n + 2)
            lo, hi, e = cos_iv if self.func == "cos" else sin_iv
            if self.sgn < 0:
                lo, hi = -hi, -lo
            if hi - lo <= (mpz(1) << (e - n)):
                return lo, hi, e
            m += 16

    def __repr__(self):
        s = "-" if self.sgn < 0 else ""
        return f"TrigPiStream({s}{self.func}({self.g} pi))"


class PiMultiple(RealStream):
    """The angle ``f * pi`` with rational f; trig of it reduces exactly."""

    def __init__(self, f):
        super().__init__()
        self.pi_coefficient = Fraction(f)
        if self.pi_coefficient == 0:
            self.exact = Fraction(0)

    def _compute(self, n):
        f = self.pi_coefficient
        u, v = f.numerator, f.denominator
        m = n + 2 + abs(f).numerator.bit_length()
        pl, ph, pe = PI._enclose(m)
        lo, hi = sorted((u * pl, u * ph))
        return lo // v, -(-hi // v), pe

    def __repr__(self):
        return f"PiMultiple({self.pi_coefficient})"


class _TrigOf(RealStream):
    def __init__(self, angle, func):
        super().__init__()
        self.angle, self.func = angle, func

    def _compute(self, n):
        lo, hi, e = self.angle._enclose(n + 6)
        cn = (lo + hi) >> 1
        rad = hi - cn + 1
        if abs(cn) > (mpz(4) << e):
            raise ValueError("angle outside [-4, 4]; reduce it first")
        cos_iv, sin_iv = _cos_sin_interval(cn, e, rad, n + 2)
        return cos_iv if self.func == "cos" else sin_iv

    def __repr__(self):
        return f"{self.func}({self.angle!r})"


class _Combine(RealStream):
    def __init__(self, op, *args):
        super().__init__()
        self.op, self.args = op, args

    def _compute(self, n):
        op, args = self.op, self.args
        if op == "neg":
            lo, hi, e = args[0]._enclose(n)
            return -hi, -lo, e
        if op == "abs":
            lo, hi, e = args[0]._enclose(n)
            if lo >= 0:
                return lo, hi, e
            if hi <= 0:
                return -hi, -lo, e
            return mpz(0), max(-lo, hi), e
        if op == "add":
            a = args[0]._enclose(n + 1)
            b = args[1]._enclose(n + 1)
            e = max(a[2], b[2])
            return (floor_shift(a[0], a[2] - e) + floor_shift(b[0], b[2] - e),
                    floor_shift(a[1], a[2] - e) + floor_shift(b[1], b[2] - e), e)
        if op == "mul":
            a, b = args
            ma = _magnitude_bits(a)
            mb = _magnitude_bits(b)
            al, ah, ea = a._enclose(n + 2 + mb)
            bl, bh, eb = b._enclose(n + 2 + ma)
            prods = (al * bl, al * bh, ah * bl, ah * bh)
            return min(prods), max(prods), ea + eb
        raise ValueError(op)

    def __repr__(self):
        return f"{self.op}{self.args!r}"


def _magnitude_bits(s):
    lo, hi, e = s._enclose(2)
    big = max(abs(lo), abs(hi)) + 1
    return max(int(big.bit_length()) - e, 0) + 1


def as_stream(x):
    """Coerce numbers, dyadics, numeric strings and streams to a stream."""
    if isinstance(x, RealStream):
        return x
    if isinstance(x, str):
        return parse_real(x)
    return ExactStream(x)


def product(a, b):
    a, b = as_stream(a), as_stream(b)
    if a.exact is not None and b.exact is not None:
        return ExactStream(a.exact * b.exact)
    if a.exact == 0 or b.exact == 0:
        return ExactStream(0)
    return _Combine("mul", a, b)


def add(a, b):
    a, b = as_stream(a), as_stream(b)
    if a.exact is not None and b.exact is not None:
        return ExactStream(a.exact + b.exact)
    return _Combine("add", a, b)


def negate(a):
    a = as_stream(a)
    if a.exact is not None:
        return ExactStream(-a.exact)
    if isinstance(a, PiMultiple):
        return PiMultiple(-a.pi_coefficient)
    if isinstance(a, TrigPiStream):
        return TrigPiStream(a.g, a.func, -a.sgn)
    return _Combine("neg", a)


def absolute(a):
    a = as_stream(a)
    if a.exact is not None:
        return ExactStream(abs(a.exact))
    if isinstance(a, TrigPiStream):
        return TrigPiStream(a.g, a.func, 1)
    return _Combine("abs", a)


def cos_pi(f, absolute=False):
    """cos(f*pi) for rational f, reduced exactly to an argument in [0, pi/4]."""
    f = Fraction(f) % 2
    if f > 1:
        f = 2 - f
    sign = 1
    if f > Fraction(1, 2):
        f, sign = 1 - f, -1
    if absolute:
        sign = 1
    # rational cosines of rational multiples of pi (Niven)
    if f == 0:
        return ExactStream(sign)
    if f == Fraction(1, 3):
        return ExactStream(Fraction(sign, 2))
    if f == Fraction(1, 2):
        return ExactStream(0)
    if f > Fraction(1, 4):
        return TrigPiStream(Fraction(1, 2) - f, "sin", sign)
    return TrigPiStream(f, "cos", sign)


def sin_pi(f, absolute=False):
    return cos_pi(Fraction(1, 2) - Fraction(f), absolute)


def cos_of(angle):
    angle = as_stream(angle)
    if isinstance(angle, PiMultiple):
        return cos_pi(angle.pi_coefficient)
    if angle.exact == 0:
        return ExactStream(1)
    return _TrigOf(angle, "cos")


def sin_of(angle):
    angle = as_stream(angle)
    if isinstance(angle, PiMultiple):
        return sin_pi(angle.pi_coefficient)
    if angle.exact == 0:
        return ExactStream(0)
    return _TrigOf(angle, "sin")


_RAT = r"[-+]?\d+(?:/\d+)?"


def parse_angle(text):
    """``p/q pi`` (or ``pi``, or a plain rational) to an angle stream."""
    t = text.strip().replace("*", " ").replace("π", "pi")
    m = re.fullmatch(rf"({_RAT})?\s*pi", t)
    if m:
        return PiMultiple(Fraction(m.group(1) or 1))
    return ExactStream(Fraction(t))


def parse_real(text):
    """Parse a real-number spec.

    Accepted forms: ``3/8``, ``0.25``, ``j/2^k``, ``p/q pi``,
    ``cos(p/q pi)``, ``sin(p/q pi)`` and ``|cos(p/q pi)|``.
    """
    t = text.strip()
    absval = t.startswith("|") and t.endswith("|")
    if absval:
        t = t[1:-1].strip()
    m = re.fullmatch(r"(cos|sin)\((.*)\)", t)
    if m:
        angle = parse_angle(m.group(2))
        if isinstance(angle, PiMultiple):
            fn = cos_pi if m.group(1) == "cos" else sin_pi
            return fn(angle.pi_coefficient, absolute=absval)
        s = cos_of(angle) if m.group(1) == "cos" else sin_of(angle)
    elif "pi" in t or "π" in t:
        s = parse_angle(t)
    elif "/2^" in t:
        s = ExactStream(Dyadic.parse(t))
    else:
        s = ExactStream(Fraction(t))
    return absolute(s) if absval else s
