"""Dense exact linear algebra: rank, kernel, annihilators.

Matrices are small dense row-major arrays over one scalar domain
(Fraction, Cyclo6, or ints mod p).  The convention, fixed repo-wide:
a matrix maps column vectors, so `cols` is the source dimension and
`rows` the target dimension; "dimensions of linear map" is reported
as (source, target) = (cols, rows).

Large prime-field ranks go through `modular.py`, not here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Cyclo6


@dataclass
class Matrix:
    rows: int
    cols: int
    entries: list  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows_data) -> "Matrix":
        rows_data = [list(r) for r in rows_data]
        r = len(rows_data)
        c = len(rows_data[0]) if r else 0
        if any(len(row) != c for row in rows_data):
            raise ValueError("ragged rows")
        return Matrix(r, c, [x for row in rows_data for x in row])

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols: (i + 1) * self.cols]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self.at(i, j) for j in range(self.cols) for i in range(self.rows)])


def _as_fraction_rows(m: Matrix):
    return [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]


def rank_bareiss(rows_data) -> int:
    """Fraction-free (Bareiss) elimination rank over the integers/rationals.

    Denominators are cleared per row first, so all arithmetic stays in Z.
    """
    work = []
    for row in rows_data:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        work.append([int(x * den) for x in row])
    m = len(work)
    n = len(work[0]) if m else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pivot = work[r][c]
        for i in range(r + 1, m):
            fi = work[i][c]
            row_i, row_r = work[i], work[r]
            for j in range(c, n):
                row_i[j] = (pivot * row_i[j] - fi * row_r[j]) // prev
        prev = pivot
        rank += 1
        r += 1
        if r == m:
            break
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _rank_division_field(rows_data, is_zero, inv, normalize=None) -> int:
    """Straightforward division-based elimination for an arbitrary exact field."""
    work = [list(r) for r in rows_data]
    m = len(work)
    n = len(work[0]) if m else 0
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if not is_zero(work[i][c]):
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        scale = inv(work[r][c])
        work[r] = [x * scale for x in work[r]]
        if normalize is not None:
            work[r] = [normalize(x) for x in work[r]]
        for i in range(r + 1, m):
            f = work[i][c]
            if is_zero(f):
                continue
            row_i, row_r = work[i], work[r]
            new_row = [a - f * b for a, b in zip(row_i, row_r)]
            if normalize is not None:
                new_row = [normalize(x) for x in new_row]
            work[i] = new_row
        r += 1
        if r == m:
            break
    return r


def mat_rank(m: Matrix) -> int:
    """Exact rank.  Dispatches on the scalar domain of the entries."""
    if m.rows == 0 or m.cols == 0:
        return 0
    sample = next((x for x in m.entries if not _generic_is_zero(x)), None)
    if sample is None:
        return 0
    if isinstance(sample, Cyclo6):
        return _rank_division_field(
            [[Cyclo6.of(x) for x in m.row(i)] for i in range(m.rows)],
            lambda x: x.is_zero(), lambda x: x.inv())
    return rank_bareiss(m.to_rows())


def rank_mod(m: Matrix, p: int) -> int:
    """Rank of an integer matrix reduced mod p (scalar path)."""
    rows = [[int(x) % p for x in m.row(i)] for i in range(m.rows)]
    if not rows:
        return 0
    return _rank_division_field(
        rows, lambda x: x == 0, lambda x: pow(x, p - 2, p),
        normalize=lambda x: x % p)


def _generic_is_zero(x) -> bool:
    if isinstance(x, Cyclo6):
        return x.is_zero()
    return x == 0


def kernel_dim(m: Matrix) -> int:
    """dim ker = source dim - rank, with the matrix acting on column vectors."""
    return m.cols - mat_rank(m)


def rref(rows_data):
    """Reduced row echelon form over Fraction.  Returns (rows, pivot_cols)."""
    work = [[Fraction(x) for x in row] for row in rows_data]
    m = len(work)
    n = len(work[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        scale = work[r][c]
        work[r] = [x / scale for x in work[r]]
        for i in range(m):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return work[:r], pivots


def kernel_basis(rows_data, ncols=None):
    """Basis of the right kernel of a Fraction matrix, as Fraction vectors."""
    rows_data = [list(r) for r in rows_data]
    if not rows_data:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(rows_data[0])
    red, pivots = rref(rows_data)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def perp(subspace_basis, ambient_dim=None):
    """Basis of the annihilator {f : f(u) = 0 for all u in the span}.

    Vectors are coordinates in a fixed basis; the annihilator is computed in
    the dual coordinates, so dim(perp) = ambient - rank(span).
    """
    vecs = [list(v) for v in subspace_basis]
    if not vecs:
        n = ambient_dim or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return kernel_basis(vecs)


def span_dim(vectors) -> int:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return 0
    return rank_bareiss(vecs)


def spans_equal(vs, ws) -> bool:
    a = span_dim(vs)
    b = span_dim(ws)
    return a == b == span_dim(list(vs) + list(ws))


def solve_in_span(basis, target):
    """Coefficients expressing `target` in the row-span `basis`, or None."""
    if not basis:
        return None if any(Fraction(x) != 0 for x in target) else []
    n = len(basis[0])
    aug = [[Fraction(basis[i][j]) for i in range(len(basis))] + [Fraction(target[j])]
           for j in range(n)]
    red, pivots = rref(aug)
    k = len(basis)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        coeffs[c] = red[i][k]
    return coeffs
