from hypothesis import given, settings
from hypothesis import strategies as st

from ncdiv.cyclic import (
    BiCyclicPoly,
    CyclicPoly,
    bicyclic_basis,
    canonical_rotation,
    least_rotation,
    necklace_str,
    necklaces,
    pair_str,
    parse_necklace,
    project,
    project_pair,
    switch,
)
from ncdiv.tensor import Alphabet, NcPoly, bracket

A3 = Alphabet(3)

words = st.lists(st.integers(1, 3), min_size=0, max_size=6).map(tuple)


def test_rotations_identified():
    assert project(NcPoly.word(A3, (1, 2, 3))) == project(NcPoly.word(A3, (2, 3, 1)))
    assert project(NcPoly.word(A3, (1, 2, 3))) == project(NcPoly.word(A3, (3, 1, 2)))


def test_reversal_not_identified():
    assert project(NcPoly.word(A3, (1, 2, 3))) != project(NcPoly.word(A3, (1, 3, 2)))


def test_commutator_dies():
    assert project(bracket(NcPoly.word(A3, (1,)), NcPoly.word(A3, (2, 3)))).is_zero()


@settings(max_examples=80, deadline=None)
@given(words, st.integers(0, 5))
def test_projection_rotation_invariant(w, r):
    if w:
        r %= len(w)
    rotated = w[r:] + w[:r]
    assert project(NcPoly.word(A3, w)) == project(NcPoly.word(A3, rotated))


@settings(max_examples=80, deadline=None)
@given(words)
def test_canonicalization_idempotent(w):
    c = canonical_rotation(w)
    assert canonical_rotation(c) == c


@settings(max_examples=80, deadline=None)
@given(words)
def test_booth_matches_brute_force(w):
    if not w:
        assert least_rotation(w) == 0
        return
    rotations = [w[r:] + w[:r] for r in range(len(w))]
    assert canonical_rotation(w) == min(rotations)


def poly_pairs():
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=2).filter(bool)
    pair = st.tuples(words, words).map(
        lambda p: (canonical_rotation(p[0]), canonical_rotation(p[1]))
    )
    return st.dictionaries(pair, coeff, max_size=3).map(lambda d: BiCyclicPoly(A3, d))


@settings(max_examples=60, deadline=None)
@given(poly_pairs())
def test_switch_involution(b):
    assert switch(switch(b)) == b


def test_switch_basis_cases():
    one = ()
    assert switch(BiCyclicPoly(A3, {((1,), one): 1})) == BiCyclicPoly(A3, {(one, (1,)): 1})
    assert switch(BiCyclicPoly(A3, {((1, 2), (3,)): 1})) == BiCyclicPoly(A3, {((3,), (1, 2)): 1})


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(words, st.fractions(min_value=-2, max_value=2, max_denominator=2).filter(bool), max_size=3),
    st.dictionaries(words, st.fractions(min_value=-2, max_value=2, max_denominator=2).filter(bool), max_size=3),
)
def test_projection_kills_commutators(d1, d2):
    p, q = NcPoly(A3, d1), NcPoly(A3, d2)
    assert project(bracket(p, q)).is_zero()


def test_necklace_enumeration_counts():
    # binary necklaces of length 3: 111, 112, 122, 222
    assert necklaces(Alphabet(2), 3) == [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]
    assert len(necklaces(A3, 3)) == 11
    assert necklaces(A3, 0) == [()]


def test_bicyclic_basis_total_degree():
    basis = bicyclic_basis(Alphabet(2), 2)
    assert ((), (1, 1)) in basis
    assert ((1,), (2,)) in basis
    assert len(basis) == len(set(basis))
    assert all(len(a) + len(b) == 2 for a, b in basis)


def test_serialization():
    assert necklace_str((1, 2, 3)) == "|1.2.3|"
    assert necklace_str(()) == "|e|"
    assert pair_str(((1, 2), (3,))) == "|1.2|*|3|"
    assert parse_necklace("|2.3.1|") == (1, 2, 3)
