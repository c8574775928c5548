"""Small dense exact linear algebra over the rational function field.

Matrices are lists of lists of RationalFn (or anything with field
operations).  Sizes in this package stay in the low hundreds, so plain
Gaussian elimination with exact arithmetic is adequate.
"""

from __future__ import annotations

from .qlaurent import RationalFn


class SingularMatrixError(ArithmeticError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


def _as_rf(x) -> RationalFn:
    return RationalFn.coerce(x)


class ExactLU:
    """One-time PLU factorization of a square matrix over the function field.

    Construction costs one elimination; every solve after that is quadratic.
    """

    def __init__(self, matrix):
        n = len(matrix)
        a = [[_as_rf(matrix[i][j]) for j in range(n)] for i in range(n)]
        perm = list(range(n))
        lower = [[RationalFn.zero()] * n for _ in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                raise SingularMatrixError(f"singular at column {col}")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                lower[col], lower[piv] = lower[piv], lower[col]
                perm[col], perm[piv] = perm[piv], perm[col]
            inv_p = a[col][col].inv()
            for r in range(col + 1, n):
                if a[r][col].is_zero():
                    continue
                f = a[r][col] * inv_p
                lower[r][col] = f
                for c in range(col, n):
                    if not a[col][c].is_zero():
                        a[r][c] = a[r][c] - f * a[col][c]
        self.n = n
        self.perm = perm
        self.lower = lower
        self.upper = a
        self._upper_inv_diag = [a[i][i].inv() for i in range(n)]

    def solve(self, column):
        n = self.n
        b = [_as_rf(column[self.perm[i]]) for i in range(n)]
        for r in range(n):
            acc = b[r]
            row = self.lower[r]
            for k in range(r):
                if not row[k].is_zero() and not b[k].is_zero():
                    acc = acc - row[k] * b[k]
            b[r] = acc
        x = [RationalFn.zero()] * n
        for r in range(n - 1, -1, -1):
            acc = b[r]
            row = self.upper[r]
            for k in range(r + 1, n):
                if not row[k].is_zero() and not x[k].is_zero():
                    acc = acc - row[k] * x[k]
            x[r] = acc * self._upper_inv_diag[r]
        return x


def lu_solve_many(matrix, rhs_columns):
    """Solve A x = b for several right-hand sides, exactly.

    ``matrix`` is square (n x n); ``rhs_columns`` is a list of length-n
    columns.  Returns the list of solution columns.  Raises
    SingularMatrixError if A is singular.
    """
    n = len(matrix)
    a = [[_as_rf(matrix[i][j]) for j in range(n)] for i in range(n)]
    bs = [[_as_rf(col[i]) for col in rhs_columns] for i in range(n)]
    m = len(rhs_columns)
    perm = list(range(n))
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            raise SingularMatrixError(f"singular at column {col}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            bs[col], bs[piv] = bs[piv], bs[col]
            perm[col], perm[piv] = perm[piv], perm[col]
        inv_p = a[col][col].inv()
        for r in range(col + 1, n):
            if a[r][col].is_zero():
                continue
            f = a[r][col] * inv_p
            for c in range(col, n):
                if not a[col][c].is_zero():
                    a[r][c] = a[r][c] - f * a[col][c]
            for c in range(m):
                if not bs[col][c].is_zero():
                    bs[r][c] = bs[r][c] - f * bs[col][c]
    # Back substitution.
    xs = [[RationalFn.zero()] * m for _ in range(n)]
    for r in range(n - 1, -1, -1):
        inv_p = a[r][r].inv()
        for c in range(m):
            acc = bs[r][c]
            for k in range(r + 1, n):
                if not a[r][k].is_zero() and not xs[k][c].is_zero():
                    acc = acc - a[r][k] * xs[k][c]
            xs[r][c] = acc * inv_p
    return [[xs[i][c] for i in range(n)] for c in range(m)]


def solve_unique(rows, rhs, nunknowns):
    """Solve a possibly overdetermined system exactly, requiring a unique solution."""
    return solve_unique_many(rows, [rhs], nunknowns)[0]


def solve_unique_many(rows, rhs_columns, nunknowns):
    """Solve A x = b for several b over a shared overdetermined A, exactly.

    Raises InconsistentSystemError if some system has no solution and
    SingularMatrixError if solutions are not unique.  Returns one solution
    list per right-hand column.
    """
    m = len(rows)
    ncols = len(rhs_columns)
    width = nunknowns + ncols
    a = [[_as_rf(x) for x in rows[i]] + [_as_rf(col[i]) for col in rhs_columns] for i in range(m)]
    rank = 0
    pivots = []
    for col in range(nunknowns):
        piv = next((r for r in range(rank, m) if not a[r][col].is_zero()), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv_p = a[rank][col].inv()
        a[rank] = [x * inv_p for x in a[rank]]
        for r in range(m):
            if r != rank and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [a[r][c] - f * a[rank][c] for c in range(width)]
        pivots.append(col)
        rank += 1
    for r in range(rank, m):
        for c in range(nunknowns, width):
            if not a[r][c].is_zero():
                raise InconsistentSystemError("inconsistent linear system")
    if rank < nunknowns:
        raise SingularMatrixError(f"underdetermined system: rank {rank} < {nunknowns}")
    out = []
    for j in range(ncols):
        x = [RationalFn.zero()] * nunknowns
        for r, col in enumerate(pivots):
            x[col] = a[r][nunknowns + j]
        out.append(x)
    return out


def invert_unitriangular(matrix, order):
    """Invert a matrix that is unitriangular with respect to ``order``.

    ``matrix[i][j]`` is the (order[i], order[j]) entry; entries must satisfy
    matrix[i][i] == 1 and matrix[i][j] == 0 for i appearing after j.  Works
    over any scalar with +, * and subtraction (Laurent entries stay Laurent).
    """
    n = len(order)
    from .qlaurent import LaurentPoly

    inv = [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(n)] for i in range(n)]
    # Forward substitution along the order (matrix assumed lower-unitriangular
    # when rows and columns are listed in processing order).
    for j in range(n):
        for i in range(j + 1, n):
            acc = LaurentPoly.zero()
            for k in range(j, i):
                mik = matrix[i][k]
                if mik and inv[k][j]:
                    acc = acc + mik * inv[k][j]
            inv[i][j] = -acc
    return inv
