"""Empirical complexity estimates for finite binary words.

The estimator counts phrases of the Lempel-Ziv 1976 parse (each phrase is
the shortest new word that cannot be copied from earlier text, overlapping
copies allowed) and charges ``ceil(log2(c+1))`` bits per phrase.  It is a
compressor-style upper-bound shape, not a Kolmogorov complexity.
"""

from fractions import Fraction

from .bitcore import BitString


def _lce(s, p, i, limit):
    """Length of the longest common prefix of s[p:] and s[i:], at most limit."""
    if limit <= 0 or s[p] != s[i]:
        return 0
    lo, step = 1, 1
    while lo + step <= limit and s[p:p + lo + step] == s[i:i + lo + step]:
        lo += step
        step *= 2
    hi = min(lo + step, limit + 1)  # s[..:lo] matches, s[..:hi] does not (or hi > limit)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if s[p:p + mid] == s[i:i + mid]:
            lo = mid
        else:
            hi = mid
    return lo


def lz76_phrases(bits):
    """Number of phrases in the LZ76 parse of a word."""
    s = str(bits).encode() if not isinstance(bits, bytes) else bits
    n = len(s)
    i, c = 0, 0
    while i < n:
        c += 1
        p = s.find(s[i:i + 1], 0, i)
        if p < 0:
            i += 1
            continue
        L = 1
        while True:
            L = max(L, _lce(s, p, i, n - i))
            if i + L >= n:
                return c
            # s[i:i+L] matches at p; look for the next occurrence of one more bit
            p = s.find(s[i:i + L + 1], p + 1, i + L)
            if p < 0:
                break
        i += L + 1
    return c


def lz_estimate(bits):
    """K-hat(sigma) = c * ceil(log2(c + 1)) with c the LZ76 phrase count."""
    if len(bits) < 1:
        raise ValueError("estimate needs a nonempty word")
    c = lz76_phrases(bits)
    return c * c.bit_length()


def density_profile(bits, checkpoints):
    """``K-hat(prefix_n) / n`` at each checkpoint n, as exact fractions.

    ``bits`` is a BitString or any object with ``bits(n)`` (a bit stream).
    """
    checkpoints = list(checkpoints)
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must increase")
    if not checkpoints:
        return []
    if isinstance(bits, BitString):
        word = bits
    else:
        word = bits.bits(checkpoints[-1])
    s = str(word).encode()
    return [Fraction(lz_estimate(s[:n]), n) for n in checkpoints]
