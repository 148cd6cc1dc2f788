"""Exact rational matrix kernel.

Matrices are immutable tuples of tuples of Fraction. numpy enters only through
two doors: integer fast paths (detected, bound-checked, and still exact) and
explicit to_float conversions for the numeric cross-check code paths. Nothing
here rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


class LinalgError(ValueError):
    pass


def mat(rows) -> Matrix:
    """Canonicalize nested iterables of ints/Fractions into an exact matrix."""
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise LinalgError("ragged rows")
    return out


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    zero = Fraction(0)
    return tuple(tuple(zero for _ in range(m)) for _ in range(n))


def eye(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def madd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def msub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def smul(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


def _int_scaled(a: Matrix):
    """Return (numpy int array, denominator) if every entry is d*integer, else None."""
    den = 1
    for row in a:
        for x in row:
            den = lcm(den, x.denominator)
            if den > 1 << 30:
                return None
    arr = np.array([[int(x * den) for x in row] for row in a], dtype=np.int64)
    return arr, den


def mmul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product. Uses an int64 fast path when entries scale to small integers."""
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise LinalgError(f"shape mismatch {shape(a)} @ {shape(b)}")
    sa, sb = _int_scaled(a), _int_scaled(b)
    if sa is not None and sb is not None:
        ia, da = sa
        ib, db = sb
        bound = k * int(np.max(np.abs(ia)) or 0) * int(np.max(np.abs(ib)) or 0)
        if bound < 1 << 62:
            prod = ia @ ib
            d = da * db
            return tuple(
                tuple(Fraction(int(prod[i, j]), d) for j in range(m)) for i in range(n)
            )
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return msub(mmul(a, b), mmul(b, a))


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    return madd(mmul(a, b), mmul(b, a))


def kron(a: Matrix, b: Matrix) -> Matrix:
    na, ma = shape(a)
    nb, mb = shape(b)
    return tuple(
        tuple(a[i // nb][j // mb] * b[i % nb][j % mb] for j in range(ma * mb))
        for i in range(na * nb)
    )


def max_abs(a: Matrix) -> Fraction:
    return max((abs(x) for row in a for x in row), default=Fraction(0))


def flatten(a: Matrix) -> tuple:
    return tuple(x for row in a for x in row)


def to_float(a: Matrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in a], dtype=float)


def from_int_array(arr) -> Matrix:
    return tuple(tuple(Fraction(int(x)) for x in row) for row in arr)


def det(a: Matrix) -> Fraction:
    """Exact determinant by fraction Gaussian elimination with partial pivoting."""
    n, m = shape(a)
    if n != m:
        raise LinalgError("determinant of non-square matrix")
    rows = [list(r) for r in a]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pivot = rows[col][col]
        result *= pivot
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                f = rows[r][col] / pivot
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return sign * result


def rank(a: Matrix) -> int:
    n, m = shape(a)
    rows = [list(r) for r in a]
    rk = 0
    col = 0
    for col in range(m):
        piv = next((r for r in range(rk, n) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        pivot = rows[rk][col]
        for r in range(n):
            if r != rk and rows[r][col] != 0:
                f = rows[r][col] / pivot
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rk])]
        rk += 1
        if rk == n:
            break
    return rk


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise LinalgError("inverse of non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise LinalgError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class ColumnSolver:
    """Solves M x = b exactly and repeatedly for a fixed full-column-rank M.

    M is given by columns (the typical use flattens basis matrices). A k x k
    invertible row-submatrix is located once; solving then costs one small
    multiply plus a full residual check, both exact.
    """

    def __init__(self, columns):
        self.columns = [tuple(c) for c in columns]
        self.k = len(self.columns)
        self.m = len(self.columns[0]) if self.columns else 0
        rows = [
            [self.columns[j][i] for j in range(self.k)] for i in range(self.m)
        ]
        pivot_rows = []
        work = []
        for i, row in enumerate(rows):
            candidate = list(row)
            for wrow, lead in work:
                if candidate[lead] != 0:
                    f = candidate[lead] / wrow[lead]
                    candidate = [x - f * y for x, y in zip(candidate, wrow)]
            lead = next((j for j in range(self.k) if candidate[j] != 0), None)
            if lead is not None:
                work.append((candidate, lead))
                pivot_rows.append(i)
                if len(pivot_rows) == self.k:
                    break
        if len(pivot_rows) < self.k:
            raise LinalgError("columns are linearly dependent")
        self.pivot_rows = pivot_rows
        sub = tuple(tuple(rows[i][j] for j in range(self.k)) for i in pivot_rows)
        self.sub_inv = inverse(sub)

    def solve(self, b):
        """Return (x, residual_max). Residual 0 means b is exactly in the span."""
        bsel = tuple(b[i] for i in self.pivot_rows)
        x = tuple(
            sum(self.sub_inv[i][j] * bsel[j] for j in range(self.k))
            for i in range(self.k)
        )
        resid = Fraction(0)
        for i in range(self.m):
            approx = sum(self.columns[j][i] * x[j] for j in range(self.k) if x[j] != 0)
            r = abs(b[i] - approx)
            if r > resid:
                resid = r
        return x, resid


class RationalSpan:
    """Incrementally maintained row echelon span of exact vectors."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[list[Fraction], int]] = []

    def _reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for row, lead in self.rows:
            if v[lead] != 0:
                f = v[lead] / row[lead]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert a vector; True if it enlarged the span."""
        v = self._reduce(vec)
        lead = next((j for j in range(self.dim) if v[j] != 0), None)
        if lead is None:
            return False
        self.rows.append((v, lead))
        return True

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self._reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)


def congruence_signature(a: Matrix) -> tuple[int, int, int]:
    """Exact (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Lagrange congruence diagonalization: simultaneous row and column operations
    preserve the signature, zero diagonals are repaired with the classic
    row+row / col+col trick before elimination.
    """
    n, m = shape(a)
    if n != m:
        raise LinalgError("signature of non-square matrix")
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(i)):
        raise LinalgError("signature of non-symmetric matrix")
    w = [list(row) for row in a]
    pos = neg = zero = 0

    def add_rowcol(dst, src, f=Fraction(1)):
        for j in range(n):
            w[dst][j] += f * w[src][j]
        for i in range(n):
            w[i][dst] += f * w[i][src]

    def swap_rowcol(i, j):
        w[i], w[j] = w[j], w[i]
        for row in w:
            row[i], row[j] = row[j], row[i]

    for i in range(n):
        if w[i][i] == 0:
            swap_j = next((j for j in range(i + 1, n) if w[j][j] != 0), None)
            if swap_j is not None:
                swap_rowcol(i, swap_j)
            else:
                off_j = next((j for j in range(i + 1, n) if w[i][j] != 0), None)
                if off_j is None:
                    zero += 1
                    continue
                add_rowcol(i, off_j)
        d = w[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for r in range(i + 1, n):
            if w[r][i] != 0:
                add_rowcol(r, i, -w[r][i] / d)
    return pos, neg, zero
