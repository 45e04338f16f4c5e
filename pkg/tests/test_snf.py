import pytest
from hypothesis import given, settings, strategies as st

from homfib.snf import IntMatrix, smith_normal_form

from oracles import bareiss_det, minors_gcd_diagonal


def snf_of(rows):
    return smith_normal_form(IntMatrix.from_rows(rows))


def test_diag_2_3_gives_1_6():
    form = snf_of([[2, 0], [0, 3]])
    assert form.diagonal == [1, 6]


def test_zero_matrix():
    form = snf_of([[0, 0, 0], [0, 0, 0]])
    assert form.diagonal == [0, 0]
    assert form.rank == 0
    assert form.u.to_dense() == IntMatrix.identity(2).to_dense()
    assert form.v.to_dense() == IntMatrix.identity(3).to_dense()


def test_identity_fixed():
    form = snf_of([[1, 0], [0, 1]])
    assert form.diagonal == [1, 1]


small_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m, max_size=m)))


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_snf_properties(rows):
    m = IntMatrix.from_rows(rows)
    form = smith_normal_form(m)
    # U M V = D
    d = form.u.matmul(m).matmul(form.v)
    assert d.to_dense() == form.d_matrix().to_dense()
    # divisibility chain
    diag = form.diagonal
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and b >= 0
        if a:
            assert b % a == 0
        else:
            assert b == 0
    # tracked inverses really invert
    n_r, n_c = m.nrows, m.ncols
    assert form.u.matmul(form.u_inv).to_dense() == IntMatrix.identity(n_r).to_dense()
    assert form.v.matmul(form.v_inv).to_dense() == IntMatrix.identity(n_c).to_dense()
    # unimodular bases
    assert abs(bareiss_det(form.u.to_dense())) == 1
    assert abs(bareiss_det(form.v.to_dense())) == 1


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_snf_matches_minors_gcd(rows):
    form = snf_of(rows)
    assert form.diagonal == minors_gcd_diagonal(rows)


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_kernel_columns_annihilate(rows):
    m = IntMatrix.from_rows(rows)
    form = smith_normal_form(m)
    for col in form.kernel_columns():
        assert not m.apply(col)
    # kernel dimension is ncols - rank
    assert len(form.kernel_columns()) == m.ncols - form.rank


def test_matrix_ops_roundtrip():
    m = IntMatrix.from_rows([[1, 2], [3, 4]])
    m.row_add(0, 1, 2)
    assert m.to_dense() == [[7, 10], [3, 4]]
    m.col_swap(0, 1)
    assert m.to_dense() == [[10, 7], [4, 3]]
    m.row_negate(1)
    assert m.to_dense() == [[10, 7], [-4, -3]]
    assert m.nnz() == 4
    m[0, 0] = 0
    assert m.nnz() == 3


@pytest.mark.parametrize("rows,expected", [
    ([[2, 4, 4], [-6, 6, 12], [10, 4, 16]], [2, 2, 156]),
    ([[1, 0], [0, 0]], [1, 0]),
    ([[6]], [6]),
])
def test_known_forms(rows, expected):
    assert snf_of(rows).diagonal == expected
