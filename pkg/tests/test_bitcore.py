import pytest
from hypothesis import given
from hypothesis import strategies as st

from marstrand.bitcore import (BitString, decode_int, decode_rational,
                               decode_tuple, deinterleave, encode_int,
                               encode_nat, encode_rational, encode_real_at,
                               encode_tuple, interleave, pair, unpair)
from marstrand.dyadic import Dyadic
from marstrand.errors import LengthMismatch, UndeterminedBits
from marstrand.streams import OpaqueStream, cos_pi, parse_real

import oracles

words = st.text(alphabet="01", max_size=80)


class TestBitString:
    def test_indexing_and_length(self):
        b = BitString("1101")
        assert len(b) == 4
        assert [b[i] for i in range(4)] == [1, 1, 0, 1]
        assert b[-1] == 1
        with pytest.raises(IndexError):
            b[4]

    def test_leading_zeros_survive(self):
        b = BitString("0010")
        assert str(b) == "0010" and b.value == 2

    def test_slices(self):
        b = BitString("101100")
        assert str(b[1:4]) == "011"
        assert str(b[4:2]) == ""
        assert str(b[::2]) == "110"

    def test_rejects_other_symbols(self):
        with pytest.raises(ValueError):
            BitString("10a")

    def test_text_round_trip(self):
        b = BitString("0110")
        assert b.to_text() == "len:4;bits:0110"
        assert BitString.from_text("len:4;bits:0110") == b
        assert BitString.from_text("len:0;bits:") == BitString()

    def test_text_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            BitString.from_text("len:5;bits:0110")

    def test_prefix_relations(self):
        s, r = BitString("10"), BitString("1011")
        assert s.is_prefix_of(r) and s.is_proper_prefix_of(r)
        assert r.is_prefix_of(r) and not r.is_proper_prefix_of(r)
        assert r.endswith(BitString("11"))
        assert r.count() == 3

    @given(words, words, words)
    def test_concat_associative_with_identity(self, a, b, c):
        A, B, C = BitString(a), BitString(b), BitString(c)
        assert (A + B) + C == A + (B + C)
        assert A + BitString() == A == BitString() + A
        assert str(A + B) == a + b

    @given(words)
    def test_length_matches_digits(self, w):
        b = BitString(w)
        assert len(b) == len(w) and str(b) == w


@pytest.mark.parametrize("k,want", [(5, "101"), (0, "0"), (12, "1100")])
def test_encode_nat_examples(k, want):
    assert str(encode_nat(k)) == want


@pytest.mark.parametrize("n,want", [(5, "11001101"), (-2, "110010"), (0, "0001")])
def test_encode_int_examples(n, want):
    assert str(encode_int(n)) == want


@given(st.integers(1, 10**6))
def test_encode_nat_length_bound(k):
    assert len(encode_nat(k)) <= k.bit_length()
    assert str(encode_nat(k)) == oracles.nat_bits(k)


@given(st.integers(-10**6, 10**6))
def test_int_code_round_trip(n):
    code = encode_int(n)
    assert str(code) == oracles.int_code(n)
    assert decode_int(code) == (n, len(code))


@given(st.lists(st.integers(-10**4, 10**4), max_size=8))
def test_tuple_round_trip(vals):
    assert decode_tuple(encode_tuple(vals), len(vals)) == tuple(vals)


@given(st.fractions())
def test_rational_round_trip(q):
    code = encode_rational(q)
    assert decode_rational(code) == (q, len(code))


def test_rational_is_canonicalised():
    from fractions import Fraction
    assert encode_rational(Fraction(2, -4)) == encode_int(-1) + encode_int(2)


@pytest.mark.parametrize("x,k,want", [
    ("1/2", 3, "0001100"), ("0", 0, "0001"), ("-5/4", 2, "111001")])
def test_encode_real_at_examples(x, k, want):
    assert str(encode_real_at(parse_real(x), k)) == want


def test_encode_real_at_stream():
    # cos(pi/4) = 0.10110101000001...
    got = encode_real_at(cos_pi(__import__("fractions").Fraction(1, 4)), 8)
    assert str(got) == "0001" + "10110101"


def test_encode_real_at_dyadic_input():
    assert str(encode_real_at(Dyadic(3, 2), 2)) == "000111"


def test_undetermined_bits():
    # an opaque stream for exactly 1/2 never settles the bit boundary
    with pytest.raises(UndeterminedBits):
        encode_real_at(OpaqueStream(parse_real("1/2")), 3)


@pytest.mark.parametrize("i,n,k", [(0, 0, 0), (0, 2, 5), (2, 1, 7)])
def test_pair_examples(i, n, k):
    assert pair(i, n) == k and unpair(k) == (i, n)


def test_pair_matches_diagonal_enumeration():
    table = oracles.cantor_by_enumeration(5000)
    for (i, n), k in table.items():
        assert pair(i, n) == k


@given(st.integers(0, 10**6))
def test_unpair_pair_bijection(k):
    assert pair(*unpair(k)) == k


@given(st.integers(0, 1000), st.integers(0, 1000))
def test_pair_unpair_identity(i, n):
    assert unpair(pair(i, n)) == (i, n)


def test_interleave_examples():
    assert str(interleave(["10", "01"])) == "1001"
    assert str(interleave(["1"])) == "1"
    words3 = ["111", "000", "101"]
    assert str(interleave(words3)) == oracles.interleave_positional(words3) == "101100101"


def test_interleave_length_mismatch():
    with pytest.raises(LengthMismatch):
        interleave(["10", "1"])


@given(st.integers(1, 5), st.integers(0, 12), st.data())
def test_deinterleave_inverts(m, n, data):
    ws = [data.draw(st.text(alphabet="01", min_size=n, max_size=n)) for _ in range(m)]
    out = interleave(ws)
    assert len(out) == m * n
    assert [str(w) for w in deinterleave(out, m)] == ws
