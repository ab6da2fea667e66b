"""Exact linear algebra over the rationals.

Two independent elimination paths are kept deliberately separate so they can
cross-check each other in the test suite:

* path 1 -- row reduction with ``Fraction`` arithmetic, pivoting on the first
  nonzero entry of each column (deterministic); supplies kernels, solving and
  the primary rank;
* path 2 -- fraction-free Bareiss elimination over the integers (rows are
  scaled to clear denominators), pivoting on the entry of largest absolute
  value.

Matrices are plain lists of lists of ``Fraction``; vectors are lists.  All
functions leave their inputs untouched.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _copy(matrix):
    return [list(row) for row in matrix]


def rref(matrix):
    """Reduced row echelon form. Returns (pivot columns, reduced rows)."""
    m = _copy(matrix)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, m


def rank(matrix) -> int:
    pivots, _ = rref(matrix)
    return len(pivots)


def kernel_basis(matrix, ncols: int | None = None):
    """Exact basis of the right null space.

    Each basis vector is scaled so its first nonzero entry is 1; the basis is
    indexed by the free columns of the reduced form, left to right.
    """
    if ncols is None:
        if not matrix:
            raise ValueError("ncols required for a matrix with no rows")
        ncols = len(matrix[0])
    if not matrix:
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    pivots, m = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][j]
        lead = next(x for x in v if x != 0)
        if lead != 1:
            v = [x / lead for x in v]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """One exact solution of matrix * v = rhs, or None if inconsistent.

    Free variables are set to zero.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if nrows == 0:
        return [Fraction(0)] * ncols
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    pivots, m = rref(aug)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        v[pc] = m[r][ncols]
    return v


def _integer_rows(matrix):
    rows = []
    for row in matrix:
        denom = 1
        for v in row:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        rows.append([int(v * denom) for v in row])
    return rows


def rank_bareiss(matrix) -> int:
    """Rank via fraction-free Bareiss elimination (largest-pivot selection)."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return 0
    m = _integer_rows(matrix)
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = None
        best = 0
        for i in range(r, nrows):
            a = abs(m[i][c])
            if a > best:
                best = a
                pivot_row = i
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        for i in range(r + 1, nrows):
            if all(v == 0 for v in m[i]):
                continue
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def determinant(matrix) -> Fraction:
    """Exact determinant (Bareiss over integers after clearing denominators)."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    scale = Fraction(1)
    m = []
    for row in matrix:
        denom = 1
        for v in row:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        scale *= denom
        m.append([int(v * denom) for v in row])
    sign = 1
    prev = 1
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return Fraction(sign * m[n - 1][n - 1]) / scale


class SpanTracker:
    """Incremental row-space tracker used to reduce vectors modulo a span.

    Rows are kept in reduced echelon form; ``reduce`` returns the residue of
    a vector modulo the current span, and ``add`` grows the span.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivot_cols: list[int] = []

    def reduce(self, vector):
        v = list(vector)
        for row, pc in zip(self.rows, self.pivot_cols):
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vector) -> bool:
        """Add a vector to the span; returns True if the rank grew."""
        v = self.reduce(vector)
        pc = next((j for j, x in enumerate(v) if x != 0), None)
        if pc is None:
            return False
        pv = v[pc]
        v = [x / pv for x in v]
        for i, row in enumerate(self.rows):
            if row[pc] != 0:
                f = row[pc]
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivot_cols.append(pc)
        order = sorted(range(len(self.pivot_cols)), key=lambda i: self.pivot_cols[i])
        self.rows = [self.rows[i] for i in order]
        self.pivot_cols = [self.pivot_cols[i] for i in order]
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)
