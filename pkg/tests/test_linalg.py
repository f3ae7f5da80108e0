from fractions import Fraction

from hypothesis import given, strategies as st

from conftest import rationals
from starmult import linalg
from starmult.scalar import cq


def test_inverse_and_identity():
    A = linalg.matrix([[2, 1], [1, 1]])
    assert linalg.matmul(A, linalg.inverse(A)) == linalg.identity(2)


def test_complex_inverse():
    A = linalg.matrix([[cq(0, 1), 1], [0, cq(0, 1)]])
    assert linalg.matmul(linalg.inverse(A), A) == linalg.identity(2)


def test_nullspace():
    A = [[1, 2, 3], [2, 4, 6]]
    basis = linalg.nullspace(A)
    assert len(basis) == 2
    for v in basis:
        assert linalg.matvec(linalg.matrix(A), v) == (0, 0)


def test_solve_consistent():
    x, y = linalg.solve([[1, 1], [1, -1]], [Fraction(3), Fraction(1)])
    assert y is None and x == [2, 1]


def test_solve_certificate():
    A = [[1, 1], [2, 2]]
    b = [Fraction(1), Fraction(3)]
    x, y = linalg.solve(A, b)
    assert x is None
    assert all(sum(yi * A[i][j] for i, yi in enumerate(y)) == 0 for j in range(2))
    assert sum(yi * bi for yi, bi in zip(y, b)) == 1


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices, st.data())
def test_solve_fredholm_alternative(A, data):
    b = data.draw(st.lists(rationals, min_size=len(A), max_size=len(A)))
    x, y = linalg.solve(A, b)
    if x is not None:
        assert list(linalg.matvec(linalg.matrix(A), x)) == b
    else:
        assert all(sum(yi * A[i][j] for i, yi in enumerate(y)) == 0 for j in range(len(A[0])))
        assert sum(yi * bi for yi, bi in zip(y, b)) == 1
