"""One extension step: lengthen a prefix so a multiple of it starts with a chosen word.

Given a prefix sigma, a multiplier a and a payload b, :func:`extend_with_block`
finds rho extending sigma and tau ending in b such that every real whose
binary expansion extends rho is mapped by x -> a*x into the coding interval
of tau.
"""

from dataclasses import dataclass

from gmpy2 import mpz

from .bitcore import BitString
from .dyadic import (Dyadic, DyadicInterval, largest_dyadic_raw,
                     mul_point_raw, scale_inner_raw)
from .errors import Degenerate, NoRoom, PrecisionExhausted
from .streams import as_stream

OVERHEAD = 5
CERTIFY_CAP = 1 << 16


@dataclass(frozen=True)
class ExtensionResult:
    rho: BitString
    tau: BitString
    tau_prime: BitString
    I: DyadicInterval
    J: DyadicInterval

    def to_json(self):
        return {
            "rho": self.rho.to_text(),
            "tau": self.tau.to_text(),
            "tau_prime": self.tau_prime.to_text(),
            "I": str(self.I),
            "J": str(self.J),
        }


def extend_raw(a, sv, sl, bv, bl):
    """Integer-level extension step.

    ``(sv, sl)`` and ``(bv, bl)`` are the values and lengths of sigma and b.
    Returns ``(rho_v, rho_len, tp_v, tp_len)``; tau is ``tp`` followed by b.
    """
    L, H, E = scale_inner_raw(a, sv, sv + 1, sl)
    tj, tk = largest_dyadic_raw(L, H, E)
    tau_v = (tj << bl) | bv
    L, H, E = scale_inner_raw(a, tau_v, tau_v + 1, tk + bl, invert=True)
    rj, rk = largest_dyadic_raw(L, H, E)
    return rj, rk, tj, tk


def _cmp(x, ex, y, ey):
    """Sign of x/2^ex - y/2^ey."""
    if ex >= ey:
        y = y << (ex - ey)
    else:
        x = x << (ey - ex)
    return (x > y) - (x < y)


def certify_raw(a, rho_v, rho_l, tau_v, tau_l, start=None):
    """Certify ``a * (rho interval)`` lies inside the open tau interval.

    Returns the precision that settled the question, or ``None`` if the cap
    was reached (or the containment is false).
    """
    exact = getattr(a, "exact", None)
    if exact is not None:
        p, q = mpz(exact.numerator), mpz(exact.denominator)
        lo_ok = _cmp(p * rho_v, rho_l, q * tau_v, tau_l) > 0
        hi_ok = _cmp(p * (rho_v + 1), rho_l, q * (tau_v + 1), tau_l) < 0
        return 0 if lo_ok and hi_ok else None
    n = start if start is not None else max(rho_l, tau_l) + 8
    while n <= max(rho_l, tau_l) + CERTIFY_CAP:
        lo, _, e = mul_point_raw(a, rho_v, rho_l, n)
        _, hi, e2 = mul_point_raw(a, rho_v + 1, rho_l, n)
        if _cmp(lo, e, tau_v, tau_l) > 0 and _cmp(hi, e2, tau_v + 1, tau_l) < 0:
            return n
        if _cmp(lo, e, tau_v + 1, tau_l) >= 0 or _cmp(hi, e2, tau_v, tau_l) <= 0:
            return None  # certainly outside
        n = 2 * n
    return None


def _check_multiplier(a):
    if a.exact is not None:
        if not 0 < a.exact <= 1:
            raise Degenerate(f"multiplier {a.exact} outside (0, 1]")
        return
    if a.sign() <= 0:
        raise Degenerate("multiplier must be positive")
    lo, _, e = a._enclose(64)
    if lo > (mpz(1) << e):
        raise Degenerate("multiplier exceeds 1")


def extend_with_block(sigma, a, b):
    """Extend sigma to rho so that ``a * [rho]`` lies in ``[tau]`` with tau ending in b."""
    a = as_stream(a)
    _check_multiplier(a)
    if len(b) == 0:
        raise ValueError("payload block must be nonempty")
    rv, rl, tv, tl = extend_raw(a, sigma.value, len(sigma), b.value, len(b))
    tau_v, tau_l = (tv << len(b)) | b.value, tl + len(b)
    if certify_raw(a, rv, rl, tau_v, tau_l) is None:
        raise PrecisionExhausted("containment could not be certified")
    return ExtensionResult(
        rho=BitString.from_int(rv, rl),
        tau=BitString.from_int(tau_v, tau_l),
        tau_prime=BitString.from_int(tv, tl),
        I=DyadicInterval(Dyadic(tv, tl), Dyadic(tv + 1, tl), closed=True),
        J=DyadicInterval(Dyadic(rv, rl), Dyadic(rv + 1, rl), closed=True),
    )


def zeros_schedule(k, nu):
    """Zero-run length ``12 k nu(k) + 1`` used at stage k+1 of the zero coding."""
    nu = getattr(nu, "nu", nu)
    if k < 0:
        raise ValueError("stage index must be nonnegative")
    return 12 * k * nu(k) + 1


def surrogate_complexity(sigma):
    """``len + 2 ceil(log2(len + 1))``: a computable upper-bound shape for K."""
    n = sigma if isinstance(sigma, int) else len(sigma)
    if n < 1:
        raise ValueError("surrogate needs a nonempty word")
    # ceil(log2(n + 1)) == n.bit_length() for n >= 1
    return n + 2 * n.bit_length()


def block_capacity(m, n):
    """Payload bits codable when growing a length-m prefix to length n."""
    if n <= m + OVERHEAD:
        raise NoRoom(f"no room to code between lengths {m} and {n}")
    return n - m - OVERHEAD
