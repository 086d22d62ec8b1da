from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from regbounds.errors import InputError, SingularMatrixError
from regbounds.exact_linalg import (
    IntMatrix,
    UnimodularWitness,
    column_upper_triangularize,
    det_exact,
    det_rational,
    elementary_divisors,
    hnf,
    integer_kernel,
    inverse_rational,
    rank,
    snf,
)


def matrices(min_rows=1, max_rows=5, min_cols=1, max_cols=5, lo=-12, hi=12):
    return st.integers(min_rows, max_rows).flatmap(
        lambda m: st.integers(min_cols, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


square = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_small_examples():
    assert det_exact([[1, 2], [3, 4]]) == -2
    H, U = hnf([[2, 4], [6, 8]])
    assert H.tolist() == [[2, 0], [0, 4]]
    assert (U.transform @ IntMatrix.from_rows([[2, 4], [6, 8]])).tolist() == H.tolist()
    D, _, _ = snf([[2, 0], [0, 3]])
    assert D.tolist() == [[1, 0], [0, 6]]
    assert integer_kernel([[1, 1]]) == [(1, -1)]
    assert integer_kernel([[2, 4]]) == [(2, -1)]
    assert sorted(integer_kernel([[2, 0, 1]])) == [(0, 1, 0), (1, 0, -2)]


@given(square)
@settings(max_examples=150, deadline=None)
def test_det_matches_sympy(rows):
    assert det_exact(rows) == sympy.Matrix(rows).det()
    assert det_rational(rows) == Fraction(int(sympy.Matrix(rows).det()))


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_hnf_shape_and_witness(rows):
    M = IntMatrix.from_rows(rows)
    H, U = hnf(M)
    assert abs(U.determinant) == 1
    assert (U.transform @ M).tolist() == H.tolist()
    # echelon with positive pivots and reduced entries above each pivot
    last = -1
    nonzero = [r for r in H.entries if any(r)]
    assert all(not any(r) for r in H.entries[len(nonzero):])
    for i, row in enumerate(nonzero):
        p = next(j for j, x in enumerate(row) if x)
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= H[k, p] < row[p]
        last = p
    assert rank(M) == sympy.Matrix(rows).rank()


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_snf_matches_sympy(rows):
    M = IntMatrix.from_rows(rows)
    D, U, V = snf(M)
    assert (U.transform @ M @ V.transform).tolist() == D.tolist()
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    divisors = elementary_divisors(M)
    for a, b in zip(divisors, divisors[1:]):
        assert b % a == 0
    from sympy.matrices.normalforms import smith_normal_form
    S = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    expected = [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]
    assert sorted(divisors) == sorted(expected)


@given(matrices(max_rows=3))
@settings(max_examples=150, deadline=None)
def test_kernel_is_saturated_basis(rows):
    M = IntMatrix.from_rows(rows)
    K = integer_kernel(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert M.apply(v) == (0,) * M.rows
    if K:
        # saturated: the kernel lattice has all elementary divisors 1
        assert elementary_divisors(IntMatrix.from_rows(K, cols=M.cols)) == [1] * len(K)


@given(square)
@settings(max_examples=100, deadline=None)
def test_inverse_and_triangularization(rows):
    M = IntMatrix.from_rows(rows)
    if det_exact(M) == 0:
        with pytest.raises(SingularMatrixError):
            column_upper_triangularize(M)
        return
    inv = inverse_rational(M)
    n = M.rows
    prod = [[sum(Fraction(rows[i][k]) * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    T, W = column_upper_triangularize(M)
    assert (M @ W.transform).tolist() == T.tolist()
    assert all(T[i, j] == 0 for i in range(n) for j in range(i))


def test_witness_rejects_non_unimodular():
    with pytest.raises(InputError):
        UnimodularWitness.of([[2, 0], [0, 1]])
    assert UnimodularWitness.of([[1, 1], [0, 1]]).determinant == 1


def test_text_round_trip():
    M = IntMatrix.from_rows([[1, -2, 3], [4, 5, -6]])
    assert IntMatrix.from_text(M.to_text()) == M
    with pytest.raises(InputError):
        IntMatrix.from_text("2 2\n1 2 3\n")
    with pytest.raises(InputError):
        IntMatrix.from_text("1 2\n1 x\n")


def test_kernel_of_empty_matrix():
    assert integer_kernel(IntMatrix.zeros(0, 2)) == [(1, 0), (0, 1)]
