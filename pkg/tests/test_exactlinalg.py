from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from serrekit.exactlinalg import (
    QQ,
    Field,
    column_space,
    kernel_basis,
    kernel_with_free,
    rank,
    rref,
    solve,
    solve_matrix,
)

F7 = Field(7)


def small_matrices(max_side=5, lo=-3, hi=3):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_kernel_of_zero_is_everything():
    K = kernel_basis(QQ.zeros(2, 2))
    assert len(K) == 2 and rank(QQ.from_columns(K, 2)) == 2


def test_kernel_of_identity_is_empty():
    assert kernel_basis(QQ.identity(3)) == []


def test_kernel_rank_one_example():
    A = QQ.from_rows([[1, 2], [2, 4]])
    (v,) = kernel_basis(A)
    # spanned by (2, -1) up to a scalar
    assert O.frac(v[0]) * -1 == 2 * O.frac(v[1])
    assert rank(A) == 1


def test_solve_examples():
    I = QQ.identity(2)
    assert [O.frac(x) for x in solve(I, [5, 7])] == [5, 7]
    assert solve(QQ.zeros(2, 2), [1, 0]) is None
    x = solve(QQ.from_rows([[1, 1], [0, 1]]), [3, 1])
    assert [O.frac(v) for v in x] == [2, 1]


def test_rank_examples():
    assert rank(QQ.zeros(3, 4)) == 0
    assert rank(QQ.identity(4)) == 4


def test_prime_field_scalars():
    assert F7.scalar(8) == F7.scalar(1)
    assert F7.scalar("1/3") * 3 == F7.scalar(1)
    with pytest.raises(ValueError):
        Field(6)


def test_rational_entries_from_strings():
    A = QQ.from_rows([["1/2", "3"], [0, "-2/3"]])
    assert O.to_rows(A) == [[Fraction(1, 2), 3], [0, Fraction(-2, 3)]]


@given(small_matrices())
def test_rank_matches_fraction_oracle(rows):
    assert rank(QQ.from_rows(rows)) == O.rank([[Fraction(x) for x in r] for r in rows])


@given(small_matrices())
def test_rank_mod_p_matches_oracle(rows):
    assert rank(F7.from_rows(rows)) == O.rank(rows, p=7)


@given(small_matrices())
def test_kernel_is_annihilated_and_complete(rows):
    A = QQ.from_rows(rows)
    K, free = kernel_with_free(A)
    n = len(rows[0])
    assert K.cols == n - O.rank([[Fraction(x) for x in r] for r in rows])
    assert K.cols == len(free)
    if K.cols:
        assert (A * K).is_zero()
        assert rank(K) == K.cols
        # reduced at the free coordinates
        assert K.submatrix(free, range(K.cols)).is_identity()


@given(small_matrices(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_is_consistent_with_rank(rows, b):
    A = QQ.from_rows(rows)
    b = b[: A.rows]
    x = solve(A, b)
    aug = [r + [v] for r, v in zip(rows, b)]
    solvable = O.rank(aug) == O.rank(rows)
    assert (x is not None) == solvable
    if x is not None:
        assert [O.frac(v) for v in (A * QQ.matrix(A.cols, 1, x)).entries()] == [Fraction(v) for v in b]


@given(small_matrices())
def test_rref_and_column_space(rows):
    A = QQ.from_rows(rows)
    R, piv = rref(A)
    oracle_R, oracle_piv = O.rref([[Fraction(x) for x in r] for r in rows])
    assert piv == oracle_piv
    assert O.to_rows(R)[: len(piv)] == oracle_R[: len(piv)]
    assert column_space(A).cols == len(piv)


@given(small_matrices(4), small_matrices(4))
def test_solve_matrix(a, b):
    A = QQ.from_rows(a)
    B = QQ.from_rows(b)
    if A.rows != B.rows:
        return
    X = solve_matrix(A, B)
    if X is not None:
        assert A * X == B
    else:
        assert O.rank([r + s for r, s in zip(a, b)]) > O.rank(a)
