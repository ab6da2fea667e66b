"""Independent dense recomputation of morphism-space dimensions.

This is the anti-bug oracle for the graded solver in ``hom.py``.  It shares
no assembly code with it: instead of enumerating only the monomials of the
forced twist per entry, every matrix entry gets a dense coefficient space
of all monomials up to its forced degree, homogeneity is imposed as extra
linear equations, the commutation and boundary systems are assembled in one
shot from that redundant parameterization, and every rank is computed with
the fraction-free Bareiss path instead of the rational row-reduction path.

    dim cycles     = #vars - rank [commutation ; homogeneity]
    dim boundaries = rank [h-homogeneity ; boundary map] - rank [h-homogeneity]
    dimension      = dim cycles - dim boundaries

The subtraction formula for the boundary dimension is the rank of the image
of the homogeneous subspace: dim B(ker H) = dim ker H - dim ker [H; B].
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .mf import GradedMF, MismatchedPotential, tau_shift
from .poly import BivariatePolynomial


def _dense_monomials(max_degree: int):
    # lex ascending in a, then b: a deliberately different order from hom.py
    out = []
    for a in range(max_degree + 1):
        for b in range(max_degree + 1 - a):
            out.append((a, b))
    return out


class _DenseLayout:
    def __init__(self, twist_of, rows: int, cols: int):
        self.keys = []
        self.index = {}
        self.twists = {}
        for mat in (0, 1):
            for i in range(rows):
                for j in range(cols):
                    t = twist_of(mat, i, j)
                    self.twists[(mat, i, j)] = t
                    if t < 0:
                        continue
                    for mono in _dense_monomials(t):
                        key = (mat, i, j, mono)
                        self.index[key] = len(self.keys)
                        self.keys.append(key)

    def __len__(self):
        return len(self.keys)

    def homogeneity_rows(self):
        rows = []
        for pos, (mat, i, j, (a, b)) in enumerate(self.keys):
            if a + b != self.twists[(mat, i, j)]:
                row = [Fraction(0)] * len(self.keys)
                row[pos] = Fraction(1)
                rows.append(row)
        return rows


def oracle_hom_dim(F: GradedMF, G: GradedMF, n: int) -> int:
    """dim Hom(F, tau^n G), recomputed densely with Bareiss ranks."""
    if F.f != G.f or F.h != G.h:
        raise MismatchedPotential("morphism spaces need a common potential")
    S, T = F, tau_shift(G, n)
    h = S.h

    def phi_twist(mat, i, j):
        return (T.F0[i] - S.F0[j]) if mat == 0 else (T.F1[i] - S.F1[j])

    def h_twist(mat, i, j):
        return (T.F1[i] - S.F0[j] - h) if mat == 0 else (T.F0[i] - S.F1[j])

    phi = _DenseLayout(phi_twist, T.rank, S.rank)
    hl = _DenseLayout(h_twist, T.rank, S.rank)

    def poly_into(column, mat, i, j, poly, sign=1):
        for (a, b), c in poly.terms():
            key = (mat, i, j, (a, b))
            column[key] = column.get(key, Fraction(0)) + sign * c

    # commutation equations, one unit column per dense variable
    columns = []
    for mat, i, j, mono in phi.keys:
        m = BivariatePolynomial.monomial(1, *mono)
        col: dict = {}
        if mat == 0:
            for r in range(T.rank):
                if not T.q0[r][i].is_zero:
                    poly_into(col, 1, r, j, T.q0[r][i] * m, sign=-1)
            for k in range(S.rank):
                if not S.q1[j][k].is_zero:
                    poly_into(col, 2, i, k, m * S.q1[j][k])
        else:
            for k in range(S.rank):
                if not S.q0[j][k].is_zero:
                    poly_into(col, 1, i, k, m * S.q0[j][k])
            for r in range(T.rank):
                if not T.q1[r][i].is_zero:
                    poly_into(col, 2, r, j, T.q1[r][i] * m, sign=-1)
        columns.append(col)
    eq_keys = sorted({key for col in columns for key in col})
    eq_index = {key: r for r, key in enumerate(eq_keys)}
    commutation = [[Fraction(0)] * len(phi) for _ in eq_keys]
    for v, col in enumerate(columns):
        for key, value in col.items():
            commutation[eq_index[key]][v] = value
    cycle_system = commutation + phi.homogeneity_rows()
    if cycle_system:
        cycles = len(phi) - linalg.rank_bareiss(cycle_system)
    else:
        cycles = len(phi)

    # boundary map from the dense homotopy space
    boundary_rows = [[Fraction(0)] * len(hl) for _ in range(len(phi))]
    for hv, (mat, i, j, mono) in enumerate(hl.keys):
        m = BivariatePolynomial.monomial(1, *mono)
        col: dict = {}
        if mat == 1:
            for k in range(S.rank):
                if not S.q0[j][k].is_zero:
                    poly_into(col, 0, i, k, m * S.q0[j][k])
            for r in range(T.rank):
                if not T.q0[r][i].is_zero:
                    poly_into(col, 1, r, j, T.q0[r][i] * m)
        else:
            for r in range(T.rank):
                if not T.q1[r][i].is_zero:
                    poly_into(col, 0, r, j, T.q1[r][i] * m)
            for k in range(S.rank):
                if not S.q1[j][k].is_zero:
                    poly_into(col, 1, i, k, m * S.q1[j][k])
        for key, value in col.items():
            if key in phi.index:
                boundary_rows[phi.index[key]][hv] = value
            elif value != 0:
                # a homogeneous homotopy never maps outside the legal grading;
                # contributions from inhomogeneous directions are controlled by
                # the homogeneity rows below, so this key cannot occur
                raise AssertionError("boundary image escaped the dense space")
    h_homog = hl.homogeneity_rows()
    stacked = h_homog + boundary_rows
    rank_h = linalg.rank_bareiss(h_homog) if h_homog else 0
    rank_stacked = linalg.rank_bareiss(stacked) if stacked else 0
    boundaries = rank_stacked - rank_h
    return cycles - boundaries
