from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marstrand.bitcore import BitString
from marstrand.dyadic import (Dyadic, DyadicInterval, interval_of,
                              largest_closed_dyadic_in, largest_dyadic_raw,
                              mul_point_enclosure, scale_interval_inner)
from marstrand.errors import Degenerate
from marstrand.streams import ExactStream, OpaqueStream, cos_pi, parse_real

import oracles

words = st.text(alphabet="01", max_size=64)


class TestDyadic:
    def test_canonical_form(self):
        d = Dyadic(6, 3)
        assert (d.num, d.exp) == (3, 2)
        assert Dyadic(4, 2) == Dyadic(1, 0)
        assert hash(Dyadic(2, 1)) == hash(Dyadic(1, 0))

    @pytest.mark.parametrize("text", ["3/2^2", "-5/2^4", "7/2^0", "0/2^0"])
    def test_text_round_trip(self, text):
        assert str(Dyadic.parse(text)) == text

    def test_parse_accepts_integers(self):
        assert Dyadic.parse("7") == Dyadic(7)

    def test_arithmetic_is_exact(self):
        a, b = Dyadic(3, 2), Dyadic(1, 3)
        assert (a + b).to_fraction() == Fraction(7, 8)
        assert (a - b).to_fraction() == Fraction(5, 8)
        assert (a * b).to_fraction() == Fraction(3, 32)
        assert -a < b < a and abs(-a) == a

    def test_from_fraction_rejects_non_dyadic(self):
        with pytest.raises(ValueError):
            Dyadic.from_fraction(Fraction(1, 3))

    @given(st.integers(-10**6, 10**6), st.integers(0, 40))
    def test_value_preserved(self, j, k):
        d = Dyadic(j, k)
        assert d.to_fraction() == Fraction(j, 2 ** k)
        assert d.num % 2 == 1 or d.exp == 0


class TestIntervals:
    def test_text_forms(self):
        iv = DyadicInterval(Dyadic(1, 2), Dyadic(1, 1))
        assert str(iv) == "(1/2^2,1/2^1)"
        assert DyadicInterval.parse(str(iv)) == iv
        c = DyadicInterval(0, 1, closed=True)
        assert str(c) == "[0/2^0,1/2^0]" and DyadicInterval.parse("[0,1]") == c

    def test_empty_open_interval_rejected(self):
        with pytest.raises(Degenerate):
            DyadicInterval(1, 1)
        DyadicInterval(1, 1, closed=True)

    def test_membership_respects_openness(self):
        o = DyadicInterval(0, 1)
        assert not o.contains(0) and o.contains(Fraction(1, 2))
        assert DyadicInterval(0, 1, closed=True).contains(0)

    @pytest.mark.parametrize("sigma,lo,hi", [
        ("1", Fraction(1, 2), 1), ("", 0, 1), ("0101", Fraction(5, 16), Fraction(6, 16))])
    def test_interval_of_examples(self, sigma, lo, hi):
        iv = interval_of(BitString(sigma))
        assert (iv.lo.to_fraction(), iv.hi.to_fraction(), iv.closed) == (lo, hi, False)

    @given(words)
    def test_diameter_is_exact_power(self, sigma):
        iv = interval_of(BitString(sigma))
        assert iv.diameter.to_fraction() == Fraction(1, 2 ** len(sigma))

    @given(words, st.text(alphabet="01", max_size=70))
    def test_prefix_iff_point_inside(self, sigma, rho):
        inside = interval_of(BitString(sigma)).contains(oracles.value(rho))
        # 0.rho is an endpoint when rho = sigma 0...0; the coding interval is open
        trailing_zero_extension = rho.startswith(sigma) and set(rho[len(sigma):]) <= {"0"}
        proper = len(rho) > len(sigma) and rho.startswith(sigma)
        assert inside == (proper and not trailing_zero_extension)


@pytest.mark.parametrize("lo,hi,want", [
    (Fraction(3, 10), Fraction(8, 10), (Fraction(1, 2), Fraction(3, 4))),
    (Fraction(0), Fraction(1), (Fraction(1, 4), Fraction(1, 2))),
    (Fraction(1, 4), Fraction(1, 2), (Fraction(5, 16), Fraction(6, 16)))])
def test_largest_closed_dyadic_examples(lo, hi, want):
    iv = largest_closed_dyadic_in((lo, hi))
    assert iv.closed and (iv.lo.to_fraction(), iv.hi.to_fraction()) == want
    assert largest_dyadic_brute_pair(lo, hi) == want


def largest_dyadic_brute_pair(lo, hi):
    j, k = oracles.largest_dyadic_brute(lo, hi)
    return Fraction(j, 2 ** k), Fraction(j + 1, 2 ** k)


def test_largest_closed_dyadic_from_interval():
    iv = largest_closed_dyadic_in(DyadicInterval(Dyadic(1, 2), Dyadic(1, 1)))
    assert str(iv) == "[5/2^4,3/2^3]"


def test_largest_closed_dyadic_degenerate():
    with pytest.raises(Degenerate):
        largest_dyadic_raw(3, 3, 2)
    with pytest.raises(Degenerate):
        largest_closed_dyadic_in((Fraction(1, 3), Fraction(1, 3)))


@given(st.integers(0, 2**20), st.integers(1, 2**20), st.integers(0, 30))
def test_largest_dyadic_raw_matches_brute_force(lo, w, e):
    j, k = largest_dyadic_raw(lo, lo + w, e)
    lo_f, hi_f = Fraction(lo, 2 ** e), Fraction(lo + w, 2 ** e)
    assert (j, k) == oracles.largest_dyadic_brute(lo_f, hi_f)
    # k <= -log2(diam) + 2 (k is natural, so only for diam <= 1)
    assert 2 ** k * min(hi_f - lo_f, 1) <= 4


@given(st.fractions(0, 1), st.fractions(0, 1))
def test_largest_closed_dyadic_rational_matches_brute_force(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    iv = largest_closed_dyadic_in((lo, hi))
    assert (iv.lo.to_fraction(), iv.hi.to_fraction()) == largest_dyadic_brute_pair(lo, hi)
    assert iv.diameter.to_fraction() * 4 >= hi - lo


class TestScaleInner:
    def test_exact_half(self):
        iv = scale_interval_inner(Fraction(1, 2), DyadicInterval(Dyadic(1, 1), 1))
        assert str(iv) == "(1/2^2,1/2^1)"

    def test_exact_half_inverted(self):
        I = DyadicInterval(Dyadic(5, 4), Dyadic(21, 6))
        iv = scale_interval_inner(Fraction(1, 2), I, invert=True)
        assert (iv.lo.to_fraction(), iv.hi.to_fraction()) == (Fraction(5, 8), Fraction(21, 32))

    @pytest.mark.parametrize("a", [ExactStream(Fraction(1, 3)),
                                   OpaqueStream(ExactStream(Fraction(1, 3)))])
    def test_one_third(self, a):
        iv = scale_interval_inner(a, DyadicInterval(Dyadic(1, 1), 1))
        lo, hi = iv.lo.to_fraction(), iv.hi.to_fraction()
        assert Fraction(1, 6) <= lo < hi <= Fraction(1, 3)
        assert hi - lo >= Fraction(999, 1000) * Fraction(1, 6)

    @given(st.integers(1, 10**6), st.integers(1, 10**6), words,
           st.integers(1, 4000), st.booleans(), st.booleans())
    def test_inside_exact_image(self, p, q, sigma, angle, invert, opaque):
        if opaque:
            f = Fraction(angle, 8001)  # angle in (0, pi/2): cos in (0, 1)
            a = cos_pi(f)
            exact = oracles.mp_fraction(oracles.cos_pi_mp(f, 120), 300)
            a_lo, a_hi = exact, exact + Fraction(1, 2 ** 300)
        else:
            p, q = min(p, q), max(p, q)
            a = ExactStream(Fraction(p, q))
            a_lo = a_hi = Fraction(p, q)
        I = interval_of(BitString(sigma))
        lo, hi = I.lo.to_fraction(), I.hi.to_fraction()
        J = scale_interval_inner(a, I, invert=invert)
        jl, jh = J.lo.to_fraction(), J.hi.to_fraction()
        if invert:
            img_lo, img_hi = lo / a_lo, hi / a_hi
            true_diam = (hi - lo) / a_lo
        else:
            img_lo, img_hi = a_hi * lo, a_lo * hi
            true_diam = a_lo * (hi - lo)
        assert img_lo <= jl < jh <= img_hi
        assert (jh - jl) >= (1 - Fraction(1, 2 ** 20)) * true_diam * (1 - Fraction(1, 2 ** 200))


class TestMulPoint:
    def test_half_of_one(self):
        iv = mul_point_enclosure(Fraction(1, 2), BitString("1"), 10)
        assert iv.closed and iv.contains(Fraction(1, 4))
        assert iv.diameter.to_fraction() <= Fraction(1, 2 ** 10)

    def test_one_third_stream(self):
        a = OpaqueStream(ExactStream(Fraction(1, 3)))
        iv = mul_point_enclosure(a, BitString("11"), 20)
        assert iv.contains(Fraction(1, 4))
        assert iv.diameter.to_fraction() <= Fraction(1, 2 ** 20)

    def test_empty_prefix(self):
        assert mul_point_enclosure(cos_pi(Fraction(1, 5)), BitString(), 4).contains(0)

    @given(st.text(alphabet="01", min_size=1, max_size=100), st.integers(1, 999),
           st.integers(0, 200))
    def test_width_and_containment(self, sigma, num, n):
        f = Fraction(num, 2000)
        iv = mul_point_enclosure(parse_real(f"|cos({f} pi)|"), BitString(sigma), n)
        assert iv.diameter.to_fraction() <= Fraction(1, 2 ** n)
        exact = abs(oracles.mp_fraction(oracles.cos_pi_mp(f, 150), 400)) * oracles.value(sigma)
        slack = Fraction(1, 2 ** 398)
        assert iv.lo.to_fraction() <= exact + slack and exact - slack <= iv.hi.to_fraction()
