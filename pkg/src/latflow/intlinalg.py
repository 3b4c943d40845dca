"""Exact linear algebra over the integers and rationals.

Matrices are plain lists of row lists.  Everything here is elementary and
dimension-small (d <= 8), so clarity wins over asymptotics: ranks and
determinants use fraction-free (Bareiss) elimination, lattice-level work
(Hermite normal form, integer kernels, saturation) uses unimodular column
operations.  No floats anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x) if isinstance(x, int) else abs(int(x)))
        if g == 1:
            return 1
    return g


def scale_to_int_rows(mat):
    """Per-row denominator clearing; preserves rank and row spans over Q."""
    out = []
    for row in mat:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                d = x.denominator
                lcm = lcm * d // gcd(lcm, d)
        out.append([int(x * lcm) for x in row])
    return out


def int_det(mat):
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def int_rank(mat):
    """Rank of an integer matrix, fraction-free with full pivoting."""
    if not mat or not mat[0]:
        return 0
    m = [list(row) for row in mat]
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for k in range(min(rows, cols)):
        pr = pc = -1
        for i in range(k, rows):
            for j in range(k, cols):
                if m[i][j] != 0:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        m[k], m[pr] = m[pr], m[k]
        if pc != k:
            for row in m:
                row[k], row[pc] = row[pc], row[k]
        pivot = m[k][k]
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
        rank += 1
    return rank


def rank(mat):
    """Rank of a matrix with int or Fraction entries."""
    return int_rank(scale_to_int_rows(mat))


class RowEchelon:
    """Incremental integer row echelon, for rank profiles.

    Rows are inserted one at a time; `rank` after r insertions equals the
    rank of the first r rows.  Pivot rows are kept primitive so entries
    stay small.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}  # pivot column -> primitive row

    def insert(self, row):
        """Insert a row; returns True if it increased the rank."""
        r = list(row)
        for j in sorted(self.pivots):
            if r[j] != 0:
                p = self.pivots[j]
                a, b = p[j], r[j]
                r = [a * x - b * y for x, y in zip(r, p)]
        for j, x in enumerate(r):
            if x != 0:
                g = vec_gcd(r)
                if g > 1:
                    r = [v // g for v in r]
                if r[j] < 0:
                    r = [-v for v in r]
                self.pivots[j] = r
                return True
        return False

    @property
    def rank(self):
        return len(self.pivots)

    def contains(self, row):
        """Whether the vector lies in the row span over Q."""
        r = list(row)
        for j in sorted(self.pivots):
            if r[j] != 0:
                p = self.pivots[j]
                a, b = p[j], r[j]
                r = [a * x - b * y for x, y in zip(r, p)]
        return all(x == 0 for x in r)


def row_prefix_ranks(mat):
    """ranks[r] = rank of the first r rows, r = 0..len(mat)."""
    ech = RowEchelon(len(mat[0]) if mat else 0)
    out = [0]
    for row in mat:
        ech.insert(row)
        out.append(ech.rank)
    return out


def _column_reduce(mat):
    """Unimodular column reduction: returns (H, U) with mat @ U = H lower
    column echelon (pivots positive, one per row going down)."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    h = [list(row) for row in mat]
    u = identity(cols)

    def col_op(j1, j2, a, b, c, d):
        # (col j1, col j2) <- (a*col j1 + b*col j2, c*col j1 + d*col j2)
        for m in (h, u):
            for row in m:
                x, y = row[j1], row[j2]
                row[j1], row[j2] = a * x + b * y, c * x + d * y

    def col_swap(j1, j2):
        for m in (h, u):
            for row in m:
                row[j1], row[j2] = row[j2], row[j1]

    pivot_col = 0
    for i in range(rows):
        if pivot_col >= cols:
            break
        while True:
            nz = [j for j in range(pivot_col, cols) if h[i][j] != 0]
            if len(nz) <= 1:
                break
            j1, j2 = nz[0], nz[1]
            a, b = h[i][j1], h[i][j2]
            g, x, y = _xgcd(a, b)
            col_op(j1, j2, x, y, -(b // g), a // g)
        nz = [j for j in range(pivot_col, cols) if h[i][j] != 0]
        if nz:
            if nz[0] != pivot_col:
                col_swap(pivot_col, nz[0])
            if h[i][pivot_col] < 0:
                for m in (h, u):
                    for row in m:
                        row[pivot_col] = -row[pivot_col]
            pivot_col += 1
    return h, u


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def int_kernel(mat):
    """Basis of ker(mat) intersected with Z^n (a saturated lattice).

    mat maps Z^n -> Z^m by v -> mat @ v; returned vectors are the columns
    of the unimodular transform that hit zero columns of the echelon form.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    h, u = _column_reduce(mat)
    kernel = []
    for j in range(cols):
        if all(h[i][j] == 0 for i in range(rows)):
            kernel.append([u[i][j] for i in range(cols)])
    return kernel


def column_hnf(mat):
    """Unique Hermite form (column style) of the column-span lattice.

    Pivots positive and maximal in their row among later columns reduced;
    computed as the row HNF of the transpose, transposed back.
    """
    return transpose(row_hnf(transpose(mat)))


def row_hnf(mat):
    """Row-style Hermite normal form of the row-span lattice (unique)."""
    h = [list(row) for row in mat]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    pr = 0
    for pc in range(cols):
        if pr >= rows:
            break
        piv = None
        for i in range(pr, rows):
            if h[i][pc] != 0:
                piv = i
                break
        if piv is None:
            continue
        h[pr], h[piv] = h[piv], h[pr]
        for i in range(pr + 1, rows):
            while h[i][pc] != 0:
                if abs(h[i][pc]) < abs(h[pr][pc]):
                    h[pr], h[i] = h[i], h[pr]
                q = h[i][pc] // h[pr][pc]
                h[i] = [x - q * y for x, y in zip(h[i], h[pr])]
        if h[pr][pc] < 0:
            h[pr] = [-x for x in h[pr]]
        for i in range(pr):
            q = h[i][pc] // h[pr][pc]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[pr])]
        pr += 1
    return [row for row in h[:pr]] + [[0] * cols for _ in range(rows - pr)]


def saturate(vectors, dim):
    """Saturated Z-basis of the Q-span of the given integer vectors.

    Double orthogonal complement: the integer kernel of the kernel of the
    span is exactly span_Q(vectors) intersected with Z^dim.
    """
    if not vectors:
        return []
    orth = int_kernel(vectors)  # rows = vectors: maps x to (v_i . x)
    if not orth:
        return identity(dim)
    return int_kernel(orth)


def solve_fraction(mat, rhs):
    """One solution of mat @ x = rhs over Q, or None. Gaussian elimination."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(mat, rhs)]
    piv_cols = []
    pr = 0
    for pc in range(cols):
        piv = None
        for i in range(pr, rows):
            if aug[i][pc] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[pr], aug[piv] = aug[piv], aug[pr]
        inv = 1 / aug[pr][pc]
        aug[pr] = [x * inv for x in aug[pr]]
        for i in range(rows):
            if i != pr and aug[i][pc] != 0:
                f = aug[i][pc]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[pr])]
        piv_cols.append(pc)
        pr += 1
    for i in range(pr, rows):
        if aug[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(piv_cols):
        x[pc] = aug[r][cols]
    return x
