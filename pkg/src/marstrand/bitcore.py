"""Finite binary words and the integer/rational/real coding formats.

A :class:`BitString` is stored as an integer together with its length, most
significant bit first, so bit 0 is the leftmost digit and ``0.sigma`` equals
``value / 2**len``.  Values are ``gmpy2.mpz`` so shifts and masks on words of
hundreds of millions of bits stay cheap.
"""

from fractions import Fraction
from math import isqrt

import gmpy2
from gmpy2 import mpz

from .errors import LengthMismatch, UndeterminedBits

_ZERO = mpz(0)


class BitString:
    """Immutable finite binary word."""

    __slots__ = ("_value", "_length")

    def __init__(self, bits=""):
        if isinstance(bits, BitString):
            self._value, self._length = bits._value, bits._length
            return
        if not isinstance(bits, str):
            bits = "".join("1" if int(b) else "0" for b in bits)
        if bits.strip("01"):
            raise ValueError("bit strings may only contain 0 and 1")
        self._length = len(bits)
        self._value = mpz(bits, 2) if bits else _ZERO

    @classmethod
    def from_int(cls, value, length):
        """Word of the given length whose binary value is ``value``."""
        value = mpz(value)
        if length < 0 or value < 0 or value.bit_length() > length:
            raise ValueError(f"value does not fit in {length} bits")
        obj = cls.__new__(cls)
        obj._value = value
        obj._length = int(length)
        return obj

    @classmethod
    def zeros(cls, n):
        return cls.from_int(0, n)

    @classmethod
    def ones(cls, n):
        return cls.from_int((mpz(1) << n) - 1, n)

    @property
    def value(self):
        return self._value

    def __len__(self):
        return self._length

    def __getitem__(self, key):
        n = self._length
        if isinstance(key, slice):
            start, stop, step = key.indices(n)
            if step != 1:
                return BitString(str(self)[key])
            if stop <= start:
                return BitString()
            v = (self._value >> (n - stop)) & ((mpz(1) << (stop - start)) - 1)
            return BitString.from_int(v, stop - start)
        if key < 0:
            key += n
        if not 0 <= key < n:
            raise IndexError("bit index out of range")
        return int(self._value.bit_test(n - 1 - key))

    def __iter__(self):
        return (int(c) for c in str(self))

    def __add__(self, other):
        if not isinstance(other, BitString):
            other = BitString(other)
        return BitString.from_int((self._value << other._length) | other._value,
                                  self._length + other._length)

    def __radd__(self, other):
        return BitString(other) + self

    def __mul__(self, times):
        out = BitString()
        for _ in range(times):
            out = out + self
        return out

    def __eq__(self, other):
        if isinstance(other, str):
            other = BitString(other)
        if not isinstance(other, BitString):
            return NotImplemented
        return self._length == other._length and self._value == other._value

    def __hash__(self):
        return hash((self._length, self._value))

    def __str__(self):
        if self._length == 0:
            return ""
        return self._value.digits(2).zfill(self._length)

    def __repr__(self):
        if self._length <= 64:
            return f"BitString('{self}')"
        return f"BitString(<{self._length} bits>)"

    def prefix(self, n):
        if n > self._length:
            raise ValueError("prefix longer than the word")
        return BitString.from_int(self._value >> (self._length - n), n)

    def is_prefix_of(self, other):
        """True when ``self`` is a (not necessarily proper) prefix of ``other``."""
        if self._length > other._length:
            return False
        return (other._value >> (other._length - self._length)) == self._value

    def is_proper_prefix_of(self, other):
        return self._length < other._length and self.is_prefix_of(other)

    def endswith(self, other):
        if other._length > self._length:
            return False
        mask = (mpz(1) << other._length) - 1
        return (self._value & mask) == other._value

    def count(self):
        """Number of one bits."""
        return int(gmpy2.popcount(self._value))

    def to_text(self):
        return f"len:{self._length};bits:{self}"

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        try:
            head, body = text.split(";", 1)
            if not head.startswith("len:") or not body.startswith("bits:"):
                raise ValueError
            n = int(head[4:])
            bits = body[5:]
        except ValueError:
            raise ValueError(f"not a bit string record: {text[:40]!r}") from None
        if len(bits) != n:
            raise LengthMismatch(f"declared length {n}, found {len(bits)} digits")
        return cls(bits)


def _as_bits(x):
    return x if isinstance(x, BitString) else BitString(x)


def encode_nat(k):
    """Binary expansion of a natural number; zero encodes as ``"0"``."""
    if k < 0:
        raise ValueError("natural numbers only")
    if k == 0:
        return BitString("0")
    k = mpz(k)
    return BitString.from_int(k, k.bit_length())


def _doubled(w):
    return "".join(c + c for c in str(w))


def encode_int(n):
    """Self-delimiting integer code: doubled binary digits, then 01 or 10."""
    return BitString(_doubled(encode_nat(abs(n))) + ("01" if n >= 0 else "10"))


def decode_int(bits, pos=0):
    """Read one integer code starting at ``pos``; returns ``(n, next_pos)``."""
    s = str(_as_bits(bits))
    digits = []
    while True:
        pair = s[pos:pos + 2]
        if len(pair) < 2:
            raise ValueError("truncated integer code")
        pos += 2
        if pair == "00" or pair == "11":
            digits.append(pair[0])
        elif not digits:
            raise ValueError("integer code has no digits")
        else:
            mag = int("".join(digits), 2)
            return (mag if pair == "01" else -mag), pos


def encode_rational(q):
    """Reduced ``a/b`` with ``b > 0``, coded as the two integer codes in turn."""
    q = Fraction(q)
    return encode_int(q.numerator) + encode_int(q.denominator)


def decode_rational(bits, pos=0):
    a, pos = decode_int(bits, pos)
    b, pos = decode_int(bits, pos)
    return Fraction(a, b), pos


def encode_tuple(values):
    """Concatenated integer codes; decodable left to right."""
    out = BitString()
    for v in values:
        out = out + encode_int(v)
    return out


def decode_tuple(bits, count):
    pos, out = 0, []
    for _ in range(count):
        v, pos = decode_int(bits, pos)
        out.append(v)
    return tuple(out)


def _real_digits(x, k):
    """Sign and ``trunc(|x| * 2**k)`` for an exact or stream-given real."""
    if hasattr(x, "query"):
        exact = getattr(x, "exact", None)
        if exact is not None:
            return _real_digits(exact, k)
        for extra in (8, 32, 128, 512, 2048):
            iv = x.query(k + extra)
            lo, hi = iv.lo.to_fraction(), iv.hi.to_fraction()
            if lo >= 0:
                a, b = lo, hi
                neg = False
            elif hi < 0:
                a, b = -hi, -lo
                neg = True
            elif max(-lo, hi) * 2 ** k < 1:
                return False, 0  # |x| < 2^-k truncates to zero either way
            else:
                continue
            fa, fb = int(a * 2 ** k), int(b * 2 ** k)
            if fa == fb:
                return neg, fa
        raise UndeterminedBits(f"first {k} bits of the real are not determined")
    if hasattr(x, "to_fraction"):
        x = x.to_fraction()
    x = Fraction(x)
    return x < 0, int(abs(x) * 2 ** k)


def encode_real_at(x, k):
    """Doubled integer part, sign marker, then the first k bits after the point.

    Negative numbers are coded by magnitude, truncated toward zero.
    """
    neg, scaled = _real_digits(x, k)
    whole, frac = scaled >> k, scaled & ((1 << k) - 1)
    z = BitString.from_int(frac, k)
    return BitString(_doubled(encode_nat(whole)) + ("10" if neg else "01")) + z


def pair(i, n):
    """Cantor pairing ``(i+n)(i+n+1)/2 + n``."""
    s = i + n
    return s * (s + 1) // 2 + n


def unpair(k):
    """Inverse of :func:`pair`."""
    w = (isqrt(8 * k + 1) - 1) // 2
    n = k - w * (w + 1) // 2
    return w - n, n


def interleave(streams):
    """Output bit ``m*t + j`` is bit ``t`` of input ``j``."""
    streams = [str(_as_bits(s)) for s in streams]
    if not streams:
        return BitString()
    n = len(streams[0])
    if any(len(s) != n for s in streams):
        raise LengthMismatch("interleave needs words of equal length")
    return BitString("".join("".join(col) for col in zip(*streams)))


def deinterleave(bits, m):
    s = str(_as_bits(bits))
    if m <= 0 or len(s) % m:
        raise LengthMismatch(f"length {len(s)} is not a multiple of {m}")
    return [BitString(s[j::m]) for j in range(m)]
