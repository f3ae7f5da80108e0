"""Small exact dense linear algebra over rational / complex-rational scalars.

Matrices are tuples of row tuples. Sizes here are tiny (at most a few dozen
rows), so plain Gauss-Jordan elimination is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch
from .scalar import as_scalar, inverse as scalar_inverse

Matrix = Tuple[Tuple[object, ...], ...]


def matrix(rows) -> Matrix:
    rows = tuple(tuple(as_scalar(x) for x in row) for row in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("ragged matrix")
    return rows


def shape(A: Matrix) -> Tuple[int, int]:
    return (len(A), len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(A: Matrix, c) -> Matrix:
    return tuple(tuple(a * c for a in row) for row in A)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if shape(A)[1] != shape(B)[0]:
        raise DimensionMismatch(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt)
                 for row in A)


def matvec(A: Matrix, v: Sequence) -> tuple:
    return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A)


def mat_pow(A: Matrix, k: int) -> Matrix:
    out = identity(len(A))
    for _ in range(k):
        out = matmul(out, A)
    return out


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows: List[List] = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                rows[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in rows)


def is_zero(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


def rref(A: Sequence[Sequence]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(row) for row in A]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = scalar_inverse(R[r][c])
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    if any(len(row) != n for row in A):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(row) + list(e) for row, e in zip(A, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def nullspace(A: Sequence[Sequence], ncols: Optional[int] = None) -> List[List]:
    """Basis of ``{x : A x = 0}``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for row, pc in zip(R, piv):
            x[pc] = -row[fcol]
        basis.append(x)
    return basis


def _particular(A: Sequence[Sequence], b: Sequence, ncols: int):
    R, piv = rref([list(row) + [bi] for row, bi in zip(A, b)])
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def solve(A: Sequence[Sequence], b: Sequence):
    """Solve ``A x = b`` exactly.

    Returns ``(x, None)`` with one particular solution (free variables set to
    zero) when consistent, otherwise ``(None, y)`` where ``y`` is a left
    certificate: ``y^T A = 0`` and ``y^T b = 1``.
    """
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    if len(b) != nrows:
        raise DimensionMismatch("right-hand side has the wrong length")
    x = _particular(A, b, ncols)
    if x is not None:
        return x, None
    # Fredholm alternative: [A^T; b^T] y = (0, ..., 0, 1) is then consistent
    At = [list(col) for col in zip(*A)] if ncols else []
    y = _particular(At + [list(b)], [Fraction(0)] * ncols + [Fraction(1)], nrows)
    if y is None:
        raise AssertionError("no certificate for an inconsistent system")
    return None, y
