import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htcmap.f2 import BitMatrix, DimensionError, Echelon, kernel_space, rank, rref, span_membership


def matrices(max_rows=6, max_cols=7):
    return st.integers(0, max_cols).flatmap(
        lambda c: st.lists(st.integers(0, (1 << c) - 1), max_size=max_rows).map(
            lambda rows: BitMatrix(tuple(rows), c)
        )
    )


def all_combinations(rows):
    out = set()
    for k in range(len(rows) + 1):
        for combo in itertools.combinations(rows, k):
            acc = 0
            for r in combo:
                acc ^= r
            out.add(acc)
    return out


def test_rref_identity():
    m = BitMatrix.identity(3)
    red, r = rref(m)
    assert red == m and r == 3


def test_rref_zero():
    m = BitMatrix.zero(2, 4)
    red, r = rref(m)
    assert red == m and r == 0


def test_rank_of_dependent_rows():
    m = BitMatrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank(m) == 2
    # the third row is the sum of the first two; all 8 combinations span 4 vectors
    assert len(all_combinations(m.rows)) == 4


def test_kernel_examples():
    assert kernel_space(BitMatrix.identity(4)) == []
    assert len(kernel_space(BitMatrix.zero(2, 3))) == 3
    m = BitMatrix.from_lists([[1, 1]])
    assert kernel_space(m) == [0b11]


def test_span_membership_examples():
    assert span_membership([], 0)
    assert not span_membership([], 0b101)
    assert span_membership([0b011, 0b110], 0b101)


def test_span_membership_length_mismatch():
    with pytest.raises(DimensionError):
        span_membership([0b111], 0b1000, length=3)


def test_bad_matrix_rows():
    with pytest.raises(DimensionError):
        BitMatrix((0b100,), 2)
    with pytest.raises(DimensionError):
        BitMatrix.from_lists([[1, 0], [1]])


def test_adding_row_to_itself_is_zero():
    m = BitMatrix.from_lists([[1, 0, 1]])
    assert m.rows[0] ^ m.rows[0] == 0


@given(matrices())
@settings(max_examples=300)
def test_rank_nullity(m):
    assert rank(m) + len(kernel_space(m)) == m.ncols


@given(matrices())
@settings(max_examples=300)
def test_kernel_vectors_are_killed(m):
    for v in kernel_space(m):
        assert m.apply(v) == 0


@given(matrices())
@settings(max_examples=300)
def test_rref_idempotent_and_preserves_row_space(m):
    red, r = rref(m)
    assert rref(red) == (red, r)
    assert all_combinations(red.rows) == all_combinations(m.rows)
    # reduced: each pivot column is clear in every other row
    pivots = [(row & -row) for row in red.rows[:r]]
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        assert all(not (row & p) for j, row in enumerate(red.rows) if j != i)


@given(st.lists(st.integers(0, 63), max_size=5), st.integers(0, 63))
def test_span_membership_matches_enumeration(basis, v):
    assert span_membership(basis, v) == (v in all_combinations(basis))


@given(st.lists(st.integers(0, 255), max_size=8))
def test_echelon_reduced_basis_is_canonical(vectors):
    a = Echelon(vectors).reduced()
    b = Echelon(reversed(vectors)).reduced()
    assert a == b
    assert all_combinations(a) == all_combinations(vectors)
