from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdiv.tensor import (
    Alphabet,
    AlphabetMismatch,
    NcPoly,
    PairPoly,
    bracket,
    multiply,
    parse_word,
    partial,
    word_str,
)

A3 = Alphabet(3)
A5 = Alphabet(5)


def w(alphabet, *letters):
    return NcPoly.word(alphabet, tuple(letters))


def test_multiply_concatenates_words():
    assert w(A5, 1, 2) * w(A5, 3, 4, 5) == w(A5, 1, 2, 3, 4, 5)


def test_multiply_unit():
    p = w(A3, 1, 2) + w(A3, 3).scaled(Fraction(1, 2))
    assert NcPoly.one(A3) * p == p
    assert p * NcPoly.one(A3) == p


def test_multiply_bilinear():
    assert (w(A3, 1) + w(A3, 2)) * w(A3, 1) == w(A3, 1, 1) + w(A3, 2, 1)


def test_multiply_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        multiply(w(A3, 1), w(A5, 1))


def test_bracket_example():
    lhs = bracket(w(A5, 1, 2), w(A5, 3, 4, 5))
    assert lhs == w(A5, 1, 2, 3, 4, 5) - w(A5, 3, 4, 5, 1, 2)


def test_bracket_self_vanishes():
    p = w(A3, 1, 2) + w(A3, 2).scaled(3)
    assert bracket(p, p).is_zero()


def test_bracket_generators():
    assert bracket(w(A3, 1), w(A3, 2)) == w(A3, 1, 2) - w(A3, 2, 1)


def test_partial_on_generators():
    assert partial(1, w(A3, 1)) == PairPoly(A3, {((), ()): 1})
    assert partial(1, w(A3, 2)).is_zero()


def test_partial_positional_sum():
    # single occurrence of letter 1 at the middle position
    assert partial(1, w(A3, 2, 1, 3)) == PairPoly(A3, {((2,), (3,)): 1})
    # two occurrences
    assert partial(1, w(A3, 1, 1)) == PairPoly(A3, {((), (1,)): 1, ((1,), ()): 1})


def test_partial_index_range():
    with pytest.raises(IndexError):
        partial(4, w(A3, 1))


def test_word_serialization_round_trip():
    assert word_str((1, 2, 1)) == "1.2.1"
    assert word_str(()) == "e"
    assert parse_word("1.2.1") == (1, 2, 1)
    assert parse_word("e") == ()


words = st.lists(st.integers(1, 3), min_size=0, max_size=4).map(tuple)
coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=2).filter(bool)


def polys(max_terms=3):
    return st.dictionaries(words, coeffs, min_size=0, max_size=max_terms).map(
        lambda d: NcPoly(A3, d)
    )


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_jacobi_identity(p, q, r):
    total = (
        bracket(p, bracket(q, r))
        + bracket(q, bracket(r, p))
        + bracket(r, bracket(p, q))
    )
    assert total.is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3))
def test_grading_of_bracket(k, p):
    u = NcPoly.word(A3, tuple(1 + (i % 3) for i in range(k)))
    v = NcPoly.word(A3, tuple(1 + ((i + 1) % 3) for i in range(p)))
    b = bracket(u, v)
    assert b.degrees() <= {k + p}


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), st.integers(1, 3))
def test_partial_leibniz_rule(u, v, i):
    # d_i(uv) = d_i(u) * (1 (x) v) + (u (x) 1) * d_i(v), factor-wise products
    uv = multiply(u, v)
    left = partial(i, u).factor_mul(PairPoly(A3, {((), wd): c for wd, c in v.terms.items()}))
    right = PairPoly(A3, {(wd, ()): c for wd, c in u.terms.items()}).factor_mul(partial(i, v))
    assert partial(i, uv) == left + right
