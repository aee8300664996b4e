"""Polar/Cartesian conversion with certified errors, projections onto lines,
and counting grid points in small balls.

Angles are streams; ``p/q pi`` angles (:class:`PiMultiple`) keep their exact
rational coefficient, so branch decisions on them are exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from gmpy2 import mpz

from .bitcore import _real_digits
from .dyadic import Dyadic
from .streams import (ExactStream, PiMultiple, RealStream, absolute, add,
                      as_stream, cos_of, cos_pi, negate, parse_angle, product,
                      sin_of)

LIPSCHITZ_M = 1  # polar -> Cartesian on [0,1] x [0,pi/2]: singular values 1 and r
_CERT_EXTRA = 40
_RADIUS_BITS = 24


def _as_angle(x):
    if isinstance(x, str):
        return parse_angle(x)
    return as_stream(x)


@dataclass(frozen=True)
class PolarPoint:
    r: RealStream
    theta: RealStream

    def __init__(self, r, theta):
        object.__setattr__(self, "r", as_stream(r))
        object.__setattr__(self, "theta", _as_angle(theta))
        lo, hi = _bounds(self.r, 32)
        if lo < -Fraction(1, 1 << 31) or hi > 1 + Fraction(1, 1 << 31):
            raise ValueError("radius must lie in [0, 1]")


@dataclass(frozen=True)
class ErrorBall:
    center: tuple
    radius: Dyadic

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def contains_box(self, xlo, xhi, ylo, yhi):
        """Every point of the closed box lies in the open ball."""
        cx, cy = (c.to_fraction() for c in self.center)
        dx = max(abs(xlo - cx), abs(xhi - cx))
        dy = max(abs(ylo - cy), abs(yhi - cy))
        return dx * dx + dy * dy < self.radius.to_fraction() ** 2

    def contains(self, x, y):
        x, y = Fraction(x), Fraction(y)
        return self.contains_box(x, x, y, y)


def _bounds(stream, n):
    lo, hi, e = stream._enclose(n)
    return Fraction(int(lo), 1 << e), Fraction(int(hi), 1 << e)


def truncate(x, s):
    """x truncated toward zero to s bits after the point, as a Dyadic."""
    neg, m = _real_digits(x, s)
    return Dyadic(-m if neg else m, s)


def _sqrt_up(q, bits):
    """Dyadic upper bound (grid 2^-bits) of sqrt(q) for rational q >= 0."""
    q = Fraction(q)
    scaled = q * (1 << (2 * bits))
    m = -(-scaled.numerator // scaled.denominator)
    r = isqrt(m)
    if r * r < m:
        r += 1
    return Fraction(r, 1 << bits)


def _cart_parts(p, s):
    rs = truncate(p.r, s)
    ts = truncate(p.theta, s)
    ang = ExactStream(ts)
    P = product(ExactStream(rs), cos_of(ang))
    Q = product(ExactStream(rs), sin_of(ang))
    return rs, ts, P, Q


def cart_of_polar(p, s):
    """Truncated Cartesian coordinates of a polar point and a certified error bound.

    ``r`` and ``theta`` are truncated to s bits, then ``r_s cos theta_s`` and
    ``r_s sin theta_s`` are truncated to s bits.  The returned bound is an
    upper bound on the Euclidean distance to the true point, built from the
    final truncation error plus the Lipschitz constant times the input
    truncation error.
    """
    if s < 1:
        raise ValueError("precision must be at least 1")
    rs, ts, P, Q = _cart_parts(p, s)
    xs, ys = truncate(P, s), truncate(Q, s)
    n = s + _CERT_EXTRA
    bits = s + _RADIUS_BITS
    xf, yf = xs.to_fraction(), ys.to_fraction()
    Pl, Ph = _bounds(P, n)
    Ql, Qh = _bounds(Q, n)
    dx = max(abs(Pl - xf), abs(Ph - xf))
    dy = max(abs(Ql - yf), abs(Qh - yf))
    _, rh = _bounds(p.r, n)
    th_lo, th_hi = _bounds(p.theta, n)
    drr = max(rh - rs.to_fraction(), Fraction(0))
    dth = max(abs(th_hi - ts.to_fraction()), abs(th_lo - ts.to_fraction()))
    bound = _sqrt_up(dx * dx + dy * dy, bits) + LIPSCHITZ_M * _sqrt_up(drr * drr + dth * dth, bits)
    return (xs, ys), Dyadic.from_fraction(bound)


def error_ball(p, s):
    """The certified ball; an exact result gets a tiny positive radius."""
    (xs, ys), bound = cart_of_polar(p, s)
    return ErrorBall((xs, ys), max(bound, Dyadic(1, s + _RADIUS_BITS)))


def stated_radius_contains(center, s, box):
    """Is the box inside the open ball of radius 2^-s (1 + sqrt 2) around center?"""
    cx, cy = (Fraction(c.to_fraction() if isinstance(c, Dyadic) else c) for c in center)
    xlo, xhi, ylo, yhi = box
    dx = max(abs(xlo - cx), abs(xhi - cx))
    dy = max(abs(ylo - cy), abs(yhi - cy))
    return _lt_one_plus_sqrt2_sq((dx * dx + dy * dy) * (1 << (2 * s)), 1)


def _lt_one_plus_sqrt2_sq(d, S):
    """Decide d < (3 + 2 sqrt 2) S exactly for rationals d, S >= 0."""
    t = d - 3 * S
    return t < 0 or t * t < 8 * S * S


def exact_cartesian_box(p, n):
    """Enclosure box of (r cos theta, r sin theta) at precision n."""
    X = product(p.r, cos_of(p.theta))
    Y = product(p.r, sin_of(p.theta))
    xl, xh = _bounds(X, n)
    yl, yh = _bounds(Y, n)
    return xl, xh, yl, yh


def _angle_diff(theta, rho):
    theta, rho = _as_angle(theta), _as_angle(rho)
    if isinstance(theta, PiMultiple) and isinstance(rho, PiMultiple):
        return PiMultiple(theta.pi_coefficient - rho.pi_coefficient)
    if isinstance(theta, PiMultiple) and rho.exact == 0:
        return theta
    return add(theta, negate(rho))


def projection_length(s, rho, theta):
    """Stream for ``s |cos(theta - rho)|``, the length of the projection of the
    point at radius s and angle rho onto the line at angle theta."""
    diff = _angle_diff(theta, rho)
    if isinstance(diff, PiMultiple):
        c = cos_pi(diff.pi_coefficient, absolute=True)
    else:
        c = absolute(cos_of(diff))
    return product(as_stream(s), c)


def projection_branch(rho, theta):
    """+1 when |theta - rho| <= pi/2 (boundary included), else -1."""
    diff = _angle_diff(theta, rho)
    if isinstance(diff, PiMultiple):
        return 1 if abs(diff.pi_coefficient) <= Fraction(1, 2) else -1
    c = cos_of(diff)
    n = 16
    while n <= 1 << 12:
        lo, hi, _ = c._enclose(n)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        n *= 2
    return 1  # |cos| below 2^-4096: treat as the boundary case


def signed_projection(s, rho, theta):
    """``+s|cos(theta-rho)|`` if ``|theta-rho| <= pi/2`` else ``-s|cos(theta-rho)|``."""
    length = projection_length(s, rho, theta)
    return length if projection_branch(rho, theta) > 0 else negate(length)


def projection_point(s, rho, theta):
    """Orthogonal projection of the point (s, rho) onto the line at angle theta."""
    theta = _as_angle(theta)
    c = cos_of(_angle_diff(rho, theta))
    k = product(as_stream(s), c)
    return product(k, cos_of(theta)), product(k, sin_of(theta))


def count_dyadics_in_ball(a, r, scale=1):
    """Number of grid points ``2^-r z`` (z integer pair) in the open ball of
    radius ``scale * 2^-r (1 + sqrt 2)`` around ``a``.

    ``scale = 0`` is the degenerate ball {a}: the count is 1 if a is a grid
    point and 0 otherwise.
    """
    ax, ay = (Fraction(c.to_fraction() if isinstance(c, Dyadic) else c) for c in a)
    cx, cy = ax * (1 << r), ay * (1 << r)
    scale = Fraction(scale)
    if scale == 0:
        return int(cx.denominator == 1 and cy.denominator == 1)
    S = scale * scale
    reach = int(scale * 3) + 2
    fx, fy = int(cx // 1), int(cy // 1)
    count = 0
    for zx in range(fx - reach, fx + reach + 1):
        ddx = (zx - cx) ** 2
        for zy in range(fy - reach, fy + reach + 1):
            if _lt_one_plus_sqrt2_sq(ddx + (zy - cy) ** 2, S):
                count += 1
    return count


class _SqrtStream(RealStream):
    def __init__(self, q):
        super().__init__()
        self.q = Fraction(q)

    def _compute(self, n):
        e = n + 2
        m = self.q * (1 << (2 * e))
        lo = isqrt(m.numerator // m.denominator)
        return mpz(lo), mpz(lo + 1), e


class _AngleStream(RealStream):
    """atan2(y, x) in (0, pi) for y > 0, by bisection on sign(x sin t - y cos t)."""

    def __init__(self, x, y):
        super().__init__()
        self.x, self.y = Fraction(x), Fraction(y)

    def _sign_at(self, t, e):
        ang = ExactStream(Fraction(int(t), 1 << e))
        g = add(product(ExactStream(self.x), sin_of(ang)),
                negate(product(ExactStream(self.y), cos_of(ang))))
        n = e + 8
        while n < e + 4096:
            lo, hi, _ = g._enclose(n)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            n *= 2
        return 0

    def _compute(self, n):
        e = n + 2
        lo, hi = mpz(0), mpz(4) << e  # pi < 4
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            sg = self._sign_at(mid, e)
            if sg == 0:
                return mid - 1, mid + 1, e
            if sg > 0:
                hi = mid
            else:
                lo = mid
        return lo, hi, e


def polar_of_cart(x, y):
    """Polar coordinates of a Cartesian point with y >= 0.

    Points on the first axis return ``(x, 0)`` directly (x must be >= 0 there).
    """
    x, y = Fraction(x), Fraction(y)
    if y < 0:
        raise ValueError("upper half-plane only")
    if y == 0:
        if x < 0:
            return PolarPoint(-x, PiMultiple(1))
        return PolarPoint(x, 0)
    return PolarPoint(_SqrtStream(x * x + y * y), _AngleStream(x, y))


def inverse_lipschitz(center, eps):
    """Upper bound of the Lipschitz constant of Cartesian -> polar on the ball
    of radius eps around center: ``1 / (|center| - eps)``, needs |center| > eps."""
    cx, cy = (Fraction(c) for c in center)
    eps = Fraction(eps)
    d2 = cx * cx + cy * cy
    # lower bound for |center| on a fine grid
    bits = 40
    m = d2 * (1 << (2 * bits))
    low = Fraction(isqrt(m.numerator // m.denominator), 1 << bits)
    if low <= eps:
        raise ValueError("ball reaches the origin")
    return max(Fraction(1), 1 / (low - eps))
