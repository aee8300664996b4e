"""Exact dyadic rationals, dyadic intervals and the interval search primitives.

Internally many routines work on *raw* intervals ``(lo, hi, e)`` meaning the
interval with endpoints ``lo / 2**e`` and ``hi / 2**e``.  This keeps the hot
paths of the constructions down to a few shifts and multiplications on
``mpz`` integers; the public functions wrap results in :class:`Dyadic` and
:class:`DyadicInterval`.
"""

import functools
from fractions import Fraction

import gmpy2
from gmpy2 import mpz

from .errors import Degenerate, PrecisionExhausted

LOSS_GUARD = 20          # inner images lose at most 2**-20 of their diameter
FIRST_GUARD = LOSS_GUARD + 8
GUARD_CAP = 1 << 16


def _is_pow2(n):
    return n > 0 and (n & (n - 1)) == 0


def floor_shift(x, s):
    """floor(x / 2**s) for any integer s."""
    return x >> s if s >= 0 else x << -s


def ceil_shift(x, s):
    return gmpy2.c_div_2exp(mpz(x), s) if s >= 0 else mpz(x) << -s


@functools.total_ordering
class Dyadic:
    """The rational ``num / 2**exp`` in canonical form (odd numerator or exp 0)."""

    __slots__ = ("num", "exp")

    def __init__(self, num, exp=0):
        num = mpz(num)
        if exp < 0:
            num, exp = num << -exp, 0
        if num == 0:
            exp = 0
        elif exp:
            tz = min(int(gmpy2.bit_scan1(num)), exp)
            if tz:
                num, exp = num >> tz, exp - tz
        self.num = num
        self.exp = int(exp)

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        d = q.denominator
        if not _is_pow2(d):
            raise ValueError(f"{q} is not a dyadic rational")
        return cls(q.numerator, d.bit_length() - 1)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls.from_fraction(x)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if "/2^" in text:
            j, k = text.split("/2^")
            return cls(int(j), int(k))
        return cls.from_fraction(Fraction(text))

    def to_fraction(self):
        return Fraction(int(self.num), 1 << self.exp)

    def __float__(self):
        return float(self.to_fraction())

    def __str__(self):
        return f"{int(self.num)}/2^{self.exp}"

    def __repr__(self):
        return f"Dyadic({int(self.num)}, {self.exp})"

    def __hash__(self):
        if self.exp == 0:
            return hash(int(self.num))
        return hash(self.to_fraction())

    def _cmp_key(self, other):
        if isinstance(other, Dyadic):
            e = max(self.exp, other.exp)
            return self.num << (e - self.exp), other.num << (e - other.exp)
        if isinstance(other, (int, Fraction, type(mpz(0)))):
            return self.to_fraction(), Fraction(other)
        return None

    def __eq__(self, other):
        k = self._cmp_key(other)
        return NotImplemented if k is None else k[0] == k[1]

    def __lt__(self, other):
        k = self._cmp_key(other)
        return NotImplemented if k is None else k[0] < k[1]

    def __add__(self, other):
        other = Dyadic.coerce(other)
        e = max(self.exp, other.exp)
        return Dyadic((self.num << (e - self.exp)) + (other.num << (e - other.exp)), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other):
        return self + (-Dyadic.coerce(other))

    def __rsub__(self, other):
        return Dyadic.coerce(other) - self

    def __mul__(self, other):
        other = Dyadic.coerce(other)
        return Dyadic(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def __abs__(self):
        return Dyadic(abs(self.num), self.exp)

    def scaled(self, e):
        """Numerator at exponent ``e`` (must be exact)."""
        if e < self.exp:
            raise ValueError("exponent too small to hold this dyadic exactly")
        return self.num << (e - self.exp)


class DyadicInterval:
    """Interval with dyadic endpoints, open or closed."""

    __slots__ = ("lo", "hi", "closed")

    def __init__(self, lo, hi, closed=False):
        lo, hi = Dyadic.coerce(lo), Dyadic.coerce(hi)
        if closed and hi < lo or not closed and not lo < hi:
            raise Degenerate(f"empty interval {lo}, {hi}")
        self.lo, self.hi, self.closed = lo, hi, bool(closed)

    @classmethod
    def from_raw(cls, lo, hi, e, closed=False):
        return cls(Dyadic(lo, e), Dyadic(hi, e), closed)

    def raw(self):
        """``(lo, hi, e)`` on the finer of the two endpoint grids."""
        e = max(self.lo.exp, self.hi.exp)
        return self.lo.scaled(e), self.hi.scaled(e), e

    @property
    def diameter(self):
        return self.hi - self.lo

    def contains(self, x):
        x = x if isinstance(x, Dyadic) else Fraction(x)
        if self.closed:
            return self.lo <= x <= self.hi
        return self.lo < x < self.hi

    def issubset(self, other):
        if other.closed or not self.closed:
            return other.lo <= self.lo and self.hi <= other.hi
        return other.lo < self.lo and self.hi < other.hi

    def __eq__(self, other):
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        return (self.lo, self.hi, self.closed) == (other.lo, other.hi, other.closed)

    def __hash__(self):
        return hash((self.lo, self.hi, self.closed))

    def __str__(self):
        a, b = ("[", "]") if self.closed else ("(", ")")
        return f"{a}{self.lo},{self.hi}{b}"

    def __repr__(self):
        return f"DyadicInterval({self})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        closed = text[0] == "["
        lo, hi = text[1:-1].split(",")
        return cls(Dyadic.parse(lo), Dyadic.parse(hi), closed)


def interval_of(sigma):
    """The open coding interval of all reals whose expansion properly extends sigma."""
    m = len(sigma)
    v = sigma.value
    return DyadicInterval(Dyadic(v, m), Dyadic(v + 1, m), closed=False)


def largest_dyadic_raw(lo, hi, e):
    """Maximal closed ``[j/2^k, (j+1)/2^k]`` inside the open ``(lo/2^e, hi/2^e)``.

    Returns ``(j, k)``; among intervals of maximal size the leftmost wins.
    At exponent k the leftmost candidate starts just above lo, and it fits
    iff ``2^(s+1) - (lo mod 2^s) < hi - lo`` with ``s = e - k``, which only
    touches the low s bits of lo.
    """
    w = mpz(hi) - lo
    if w <= 0:
        raise Degenerate("open interval has no interior")
    k = max(0, e - int(w.bit_length()))
    while True:
        s = e - k
        if s > 0:
            ok = (mpz(1) << (s + 1)) - gmpy2.f_mod_2exp(mpz(lo), s) < w
        else:
            ok = (w << -s) > 2
        if ok:
            return floor_shift(mpz(lo), s) + 1, k
        k += 1


def _largest_dyadic_frac(lo, hi):
    lo, hi = Fraction(lo), Fraction(hi)
    if hi <= lo:
        raise Degenerate("open interval has no interior")
    a, b, c, d = lo.numerator, lo.denominator, hi.numerator, hi.denominator
    w = hi - lo
    k = max(0, w.denominator.bit_length() - w.numerator.bit_length() - 1)
    while True:
        j = (a << k) // b + 1
        if (j + 1) * d < (c << k):
            return j, k
        k += 1


def largest_closed_dyadic_in(interval):
    """Largest closed dyadic interval inside an open interval.

    ``interval`` is a :class:`DyadicInterval` (its endpoints are treated as
    excluded) or a pair of rationals.
    """
    if isinstance(interval, DyadicInterval):
        j, k = largest_dyadic_raw(*interval.raw())
    else:
        j, k = _largest_dyadic_frac(*interval)
    return DyadicInterval(Dyadic(j, k), Dyadic(j + 1, k), closed=True)


def _rational_inner(p, q, lo, hi, e, g):
    """Inner image of (lo, hi)/2^e under x -> (p/q) x on a dyadic grid."""
    if _is_pow2(q):
        t = q.bit_length() - 1
        if p == 1:
            return lo, hi, e + t
        return p * lo, p * hi, e + t
    P = g + 4 + max(0, q.bit_length() - p.bit_length() + 1)
    while True:
        L = gmpy2.c_div(p * lo << P, q)
        H = gmpy2.f_div(p * hi << P, q)
        # exact diameter in grid units is p*(hi-lo)*2^P/q
        if H > L and (H - L) * q << g >= ((1 << g) - 1) * (p * (hi - lo) << P):
            return L, H, e + P
        P *= 2
        if P > GUARD_CAP:
            raise PrecisionExhausted("rational rescaling did not settle")


def scale_inner_raw(a, lo, hi, e, invert=False, g=LOSS_GUARD):
    """Certified inner approximation of ``a * I`` (or ``I / a``) as a raw interval."""
    lo, hi = mpz(lo), mpz(hi)
    exact = getattr(a, "exact", None)
    if exact is not None:
        exact = Fraction(exact)
        if exact <= 0:
            raise Degenerate("multiplier must be positive")
        p, q = mpz(exact.numerator), mpz(exact.denominator)
        if invert:
            p, q = q, p
        return _rational_inner(p, q, lo, hi, e, g)
    G = FIRST_GUARD
    while G <= GUARD_CAP:
        n = e - int((hi - lo).bit_length()) + G
        al, ah, f = a._enclose(max(n, G))
        if al > 0:
            if not invert:
                s = f - G
                L, H = ceil_shift(ah * lo, s), floor_shift(al * hi, s)
                Lo, Ho = floor_shift(al * lo, s), ceil_shift(ah * hi, s)
            else:
                s = f + G
                L = gmpy2.c_div(floor_shift(lo, -s), al)
                H = gmpy2.f_div(floor_shift(hi, -s), ah)
                Lo = gmpy2.f_div(floor_shift(lo, -s), ah)
                Ho = gmpy2.c_div(floor_shift(hi, -s), al)
            if H > L and (H - L) << g >= ((1 << g) - 1) * (Ho - Lo):
                return L, H, e + G
        G *= 2
    raise PrecisionExhausted("inner image not certified within the guard cap")


def scale_interval_inner(a, interval, invert=False, g=LOSS_GUARD):
    """Open dyadic interval certified inside ``a*I`` (``I/a`` when inverting)."""
    from .streams import as_stream
    L, H, E = scale_inner_raw(as_stream(a), *interval.raw(), invert=invert, g=g)
    return DyadicInterval.from_raw(L, H, E)


def mul_point_raw(a, v, m, n):
    """Closed raw enclosure of width <= 2^-n of ``a * v / 2^m`` (v >= 0)."""
    v = mpz(v)
    exact = getattr(a, "exact", None)
    if exact is not None:
        exact = Fraction(exact)
        p, q = mpz(exact.numerator), mpz(exact.denominator)
        if _is_pow2(q):
            t = q.bit_length() - 1
            return p * v, p * v, m + t
        E = n + 1
        num = p * v
        den = q
        if E >= m:
            num = num << (E - m)
        else:
            den = den << (m - E)
        return gmpy2.f_div(num, den), gmpy2.c_div(num, den), E
    al, ah, f = a._enclose(n + 1)
    E = n + 2
    s = f + m - E
    lo, hi = sorted((al * v, ah * v))
    return floor_shift(lo, s), ceil_shift(hi, s), E


def mul_point_enclosure(a, sigma, n):
    """Closed interval of width at most 2^-n containing ``a * 0.sigma``."""
    from .streams import as_stream
    lo, hi, e = mul_point_raw(as_stream(a), sigma.value, len(sigma), n)
    return DyadicInterval.from_raw(lo, hi, e, closed=True)
