"""Seeded bit sources: a counter-mode PRNG and the sparse target sequence.

The PRNG is a deterministic stand-in for a random oracle.  Bit i comes from
block ``i // 512``, the 64-byte BLAKE2b digest of the block counter keyed by
the seed, so any segment can be produced without generating what precedes it.
"""

import hashlib
from fractions import Fraction

from gmpy2 import mpz

from .bitcore import BitString
from .errors import UndeterminedBits

_BLOCK_BITS = 512


def _seed_key(seed):
    return int(seed % (1 << 64)).to_bytes(8, "little")


class RandomBits:
    """Infinite pseudo-random bit source with random access."""

    def __init__(self, seed):
        self.seed = int(seed)
        self._key = _seed_key(seed)

    def _block(self, b):
        h = hashlib.blake2b(b.to_bytes(8, "little"), key=self._key, digest_size=64)
        return h.digest()

    def segment(self, start, stop):
        """Bits ``start, ..., stop-1`` as a BitString."""
        if stop <= start:
            return BitString()
        b0, b1 = start // _BLOCK_BITS, (stop - 1) // _BLOCK_BITS
        raw = b"".join(self._block(b) for b in range(b0, b1 + 1))
        v = mpz(int.from_bytes(raw, "big"))
        total = (b1 - b0 + 1) * _BLOCK_BITS
        lo = start - b0 * _BLOCK_BITS
        n = stop - start
        v = (v >> (total - lo - n)) & ((mpz(1) << n) - 1)
        return BitString.from_int(v, n)

    def bits(self, n):
        return self.segment(0, n)

    def __call__(self, i):
        return self.segment(i, i + 1)[0]

    def __repr__(self):
        return f"RandomBits({self.seed})"


def _repeat(pattern_v, plen, n):
    """First n bits of the periodic word with period ``pattern``."""
    v, length = mpz(pattern_v), plen
    while length < n:
        v = (v << length) | v
        length *= 2
    return v >> (length - n)


class TargetSequence:
    """Sparse target: position n carries a PRNG bit iff floor(eps(n+1)) > floor(eps n).

    Exactly ``floor(eps * n)`` of the first n positions carry PRNG bits; the
    rest are zero.  The carrier mask is periodic with period ``eps.denominator``.
    """

    def __init__(self, eps, seed):
        eps = Fraction(eps)
        if not 0 <= eps <= 1:
            raise ValueError("density must lie in [0, 1]")
        self.eps = eps
        self.seed = int(seed)
        self._rng = RandomBits(seed)
        p, q = eps.numerator, eps.denominator
        self._period = q
        self._pattern = [((n + 1) * p) // q > (n * p) // q for n in range(q)]

    def carries(self, n):
        return self._pattern[n % self._period]

    def mask(self, start, stop):
        n = stop - start
        if n <= 0:
            return BitString()
        q = self._period
        r = start % q
        rot = self._pattern[r:] + self._pattern[:r]
        pv = mpz(int("".join("1" if c else "0" for c in rot), 2))
        return BitString.from_int(_repeat(pv, q, n), n)

    def segment(self, start, stop):
        if stop <= start:
            return BitString()
        if self.eps == 0:
            return BitString.zeros(stop - start)
        m = self.mask(start, stop)
        r = self._rng.segment(start, stop)
        return BitString.from_int(m.value & r.value, stop - start)

    def bits(self, n):
        return self.segment(0, n)

    def __call__(self, i):
        return self.segment(i, i + 1)[0]

    def __repr__(self):
        return f"TargetSequence(eps={self.eps}, seed={self.seed})"


def gen_target(eps, seed, n):
    """First n bits of the target sequence of density eps."""
    return TargetSequence(eps, seed).bits(n)


class ExpansionBits:
    """Binary digits after the point of a real in [0, 1) given as a stream."""

    def __init__(self, stream):
        self.stream = stream

    def __call__(self, k):
        from .bitcore import _real_digits
        neg, scaled = _real_digits(self.stream, k + 1)
        if neg:
            raise UndeterminedBits("expansion source must be nonnegative")
        return int(scaled & 1)


def as_bit_source(src):
    """Callable ``k -> bit`` from a BitString/str (finite), callable or seed."""
    if callable(src):
        return src
    if isinstance(src, int):
        return RandomBits(src)
    bits = src if isinstance(src, BitString) else BitString(src)
    return bits.__getitem__
