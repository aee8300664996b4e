from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from marstrand.streams import (PI, ExactStream, OpaqueStream, PiMultiple,
                               TrigPiStream, absolute, add, cos_of, cos_pi,
                               negate, parse_angle, parse_real, product,
                               sin_of, sin_pi)

import oracles

fracs = st.fractions(-4, 4, max_denominator=10**6)


def mp_value(x, bits=600):
    return oracles.mp_fraction(x, bits)


def test_pi_digits():
    with mpmath.workdps(400):
        ref = mp_value(mpmath.pi, 1200)
    for n in (1, 10, 64, 300, 1000):
        iv = PI.query(n)
        assert iv.diameter.to_fraction() <= Fraction(1, 2 ** n)
        assert iv.lo.to_fraction() <= ref <= iv.hi.to_fraction() + Fraction(1, 2 ** 1200)


@given(fracs, st.sampled_from(["cos", "sin"]))
def test_trig_of_pi_multiples(f, func):
    s = cos_pi(f) if func == "cos" else sin_pi(f)
    with mpmath.workdps(120):
        x = mpmath.mpf(f.numerator) / f.denominator * mpmath.pi
        ref = mp_value(mpmath.cos(x) if func == "cos" else mpmath.sin(x), 350)
    slack = Fraction(1, 2 ** 349)
    for n in (8, 60, 200):
        iv = s.query(n)
        assert iv.diameter.to_fraction() <= Fraction(1, 2 ** n)
        assert iv.lo.to_fraction() - slack <= ref <= iv.hi.to_fraction() + slack


@given(st.fractions(-3, 3, max_denominator=10**4))
def test_trig_of_rational_angles(x):
    with mpmath.workdps(100):
        rc = mp_value(mpmath.cos(mpmath.mpf(x.numerator) / x.denominator), 300)
        rs = mp_value(mpmath.sin(mpmath.mpf(x.numerator) / x.denominator), 300)
    slack = Fraction(1, 2 ** 299)
    for s, ref in ((cos_of(ExactStream(x)), rc), (sin_of(ExactStream(x)), rs)):
        iv = s.query(150)
        assert iv.lo.to_fraction() - slack <= ref <= iv.hi.to_fraction() + slack


@pytest.mark.parametrize("f,value", [
    (0, 1), (Fraction(1, 3), Fraction(1, 2)), (Fraction(1, 2), 0), (1, -1),
    (Fraction(2, 3), Fraction(-1, 2)), (Fraction(-1, 3), Fraction(1, 2))])
def test_rational_cosines_are_exact(f, value):
    assert cos_pi(f).exact == value


def test_absolute_cosine():
    assert cos_pi(Fraction(2, 3), absolute=True).exact == Fraction(1, 2)
    s = cos_pi(Fraction(3, 4), absolute=True)
    assert isinstance(s, TrigPiStream) and s.sign() == 1


@given(st.integers(0, 300))
def test_nested_and_width(n):
    for s in (cos_pi(Fraction(1, 7)), PI, OpaqueStream(ExactStream(Fraction(1, 3))),
              ExactStream(Fraction(2, 3))):
        a, b = s.query(n), s.query(n + 1)
        assert a.diameter.to_fraction() <= Fraction(1, 2 ** n)
        assert b.issubset(a)


def test_answers_do_not_depend_on_query_history():
    fresh = cos_pi(Fraction(1, 9))
    used = cos_pi(Fraction(1, 9))
    for n in (500, 20, 1000, 90):
        used.query(n)
    for n in (10, 90, 500, 1000):
        assert fresh.query(n) == used.query(n)


def test_combinators():
    a, b = cos_pi(Fraction(1, 5)), ExactStream(Fraction(1, 3))
    with mpmath.workdps(60):
        ca = mpmath.cos(mpmath.pi / 5)
        ref = mp_value(ca * mpmath.mpf(1) / 3 - ca, 180)
    s = add(product(a, b), negate(a))
    iv, slack = s.query(100), Fraction(1, 2 ** 170)
    assert iv.lo.to_fraction() - slack <= ref <= iv.hi.to_fraction() + slack
    assert absolute(s).sign() == 1 and s.sign() == -1
    assert product(ExactStream(0), a).exact == 0


def test_sign_of_exact_zero():
    assert ExactStream(0).sign() == 0


@pytest.mark.parametrize("text,value", [
    ("3/8", Fraction(3, 8)), ("0.25", Fraction(1, 4)), ("5/2^4", Fraction(5, 16)),
    ("cos(1/3 pi)", Fraction(1, 2)), ("|cos(2/3 pi)|", Fraction(1, 2)),
    ("sin(1/2 pi)", 1)])
def test_parse_real_exact(text, value):
    assert parse_real(text).exact == value


def test_parse_real_streams():
    s = parse_real("|cos(3/4 pi)|")
    assert abs(s.to_float() - 0.7071067811865476) < 1e-15
    assert abs(parse_real("cos(1/2)").to_float() - 0.8775825618903728) < 1e-15


@pytest.mark.parametrize("text,coef", [
    ("1/3 pi", Fraction(1, 3)), ("pi", 1), ("-3/4 pi", Fraction(-3, 4)), ("2π", 2)])
def test_parse_angle(text, coef):
    a = parse_angle(text)
    assert isinstance(a, PiMultiple) and a.pi_coefficient == coef


def test_parse_angle_plain_rational():
    assert parse_angle("1/2").exact == Fraction(1, 2)
