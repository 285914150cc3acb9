from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdiv.linalg import (
    DimensionMismatch,
    SparseMatrix,
    SparseVector,
    in_span,
    kernel_basis,
    matvec,
    rank,
    span_dimension,
)


def dense(rows):
    entries = {}
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            entries[(r, c)] = v
    return SparseMatrix(len(rows), len(rows[0]) if rows else 0, entries)


def test_rank_identity():
    assert rank(dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_rank_zero_matrix():
    assert rank(SparseMatrix(4, 7)) == 0


def test_rank_proportional_rows():
    # row reduction by hand: second row is twice the first
    assert rank(dense([[1, 2, 3], [2, 4, 6]])) == 1


def test_kernel_identity_empty():
    assert kernel_basis(dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []


def test_kernel_zero_matrix_full():
    basis = kernel_basis(SparseMatrix(2, 2))
    assert len(basis) == 2
    assert basis[0] == SparseVector(2, {0: 1})
    assert basis[1] == SparseVector(2, {1: 1})


def test_kernel_single_equation():
    # x - y = 0 has solution line through (1, 1)
    basis = kernel_basis(dense([[1, -1]]))
    assert basis == [SparseVector(2, {0: 1, 1: 1})]


def test_kernel_leading_entry_is_one():
    m = dense([[2, 4, 6], [0, 3, 3]])
    for v in kernel_basis(m):
        lead = min(v.entries)
        assert v.entries[lead] == 1


def test_span_dimension_cases():
    assert span_dimension([SparseVector(2, {0: 1}), SparseVector(2, {1: 1})]) == 2
    assert span_dimension([SparseVector(2, {0: 1, 1: 1}), SparseVector(2, {0: 2, 1: 2})]) == 1
    assert span_dimension([]) == 0


def test_span_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        span_dimension([SparseVector(2, {0: 1}), SparseVector(3, {0: 1})])


def test_in_span():
    v1 = SparseVector(3, {0: 1, 1: 1})
    v2 = SparseVector(3, {1: 1, 2: 1})
    t = SparseVector(3, {0: 2, 1: 3, 2: 1})
    assert in_span([v1, v2], t) == [Fraction(2), Fraction(1)]
    assert in_span([v1, v2], SparseVector(3, {0: 1, 2: 1})) is None


small_fraction = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
).filter(lambda f: f != 0)


@st.composite
def sparse_matrices(draw, max_rows=5, max_cols=5):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(
        st.dictionaries(
            st.tuples(st.integers(0, rows - 1), st.integers(0, cols - 1)),
            small_fraction,
            max_size=rows * cols,
        )
    )
    return SparseMatrix(rows, cols, entries)


@settings(max_examples=60, deadline=None)
@given(sparse_matrices())
def test_rank_plus_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@settings(max_examples=60, deadline=None)
@given(sparse_matrices())
def test_kernel_vectors_annihilated(m):
    for v in kernel_basis(m):
        assert matvec(m, v).is_zero()


@settings(max_examples=40, deadline=None)
@given(sparse_matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_row_operations(m, rng):
    rows = m.row_dicts()
    rng.shuffle(rows)
    scaled = []
    for row in rows:
        a = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        if rng.random() < 0.5:
            a = -a
        scaled.append({c: a * v for c, v in row.items()})
    m2 = SparseMatrix.from_rows(scaled, m.cols) if scaled else SparseMatrix(0, m.cols)
    assert rank(m2) == rank(m)
