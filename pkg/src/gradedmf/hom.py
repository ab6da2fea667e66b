"""Morphism spaces in the homotopy category, computed by exact linear algebra.

For factorizations F and G of the same potential, the space of morphisms
F -> tau^n G in the homotopy category is finite dimensional: each matrix
entry of a candidate (phi0, phi1) is a homogeneous polynomial of a twist
forced by the endpoint twist sequences, so the commutation constraints

    phi1 q0 - q0' phi0 = 0,      phi0 q1 - q1' phi1 = 0

are a finite exact linear system in the monomial coefficients (the cycle
space), and the null-homotopic morphisms

    (h1 q0 + q1' h0,  q0' h1 + h0 q1)

over all degree-legal pairs (h0, h1) span a subspace of it (the boundary
space).  The reported dimension is dim(cycles) - dim(boundaries); basis
representatives are cycle vectors reduced to echelon residues modulo the
boundary space, so they are deterministic.

Twist scanning uses ``twist_window``: when both sides split (after
reduction) into recognized rank-one objects, the window is the union of the
per-pair windows

    [d, d + mu - 1] shifted by base twists,   d = max(0, |I| - |J|),

which provably contains the support; otherwise a feasibility onset is
combined with the Jacobian margin (2h - 4) + h.  Partial derivatives of the
potential act null-homotopically, so the graded pieces of any morphism
space form a module over the Jacobi ring, whose socle sits 2h - 4 twists
above a generator; the extra h is safety.  Every dimension is computed,
never assumed, so an over-wide window only costs time.

The homotopy h0 of a morphism into tau^n G has entry twists
``G.F1[i] + n - F.F0[j] - h``; this pins down the bookkeeping convention
used throughout (see also ``mf.py``).
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .mf import (
    GradedMF,
    Homotopy,
    MFMorphism,
    MismatchedPotential,
    NotReducedError,
    compose,
    identity_morphism,
    make_morphism,
    morphism_violations,
    phase,
    reduce_mf,
    tau_shift,
)
from .params import DeformationParams
from .poly import BivariatePolynomial, ZERO
from .rank_one import recognize_rank1_sum

VarKey = tuple[int, int, int, tuple[int, int]]  # (matrix 0/1, row, col, monomial)


def _legal_monomials(twist: int):
    if twist < 0:
        return []
    return [(a, twist - a) for a in range(twist, -1, -1)]


class _Layout:
    """Coefficient coordinates for a pair of matrices with forced entry twists."""

    def __init__(self, twist_of, rows: int, cols: int):
        self.keys: list[VarKey] = []
        self.index: dict[VarKey, int] = {}
        for mat in (0, 1):
            for i in range(rows):
                for j in range(cols):
                    for mono in _legal_monomials(twist_of(mat, i, j)):
                        key = (mat, i, j, mono)
                        self.index[key] = len(self.keys)
                        self.keys.append(key)

    def __len__(self):
        return len(self.keys)


def _phi_layout(S: GradedMF, T: GradedMF) -> _Layout:
    def twist_of(mat, i, j):
        if mat == 0:
            return T.F0[i] - S.F0[j]
        return T.F1[i] - S.F1[j]

    return _Layout(twist_of, T.rank, S.rank)


def _h_layout(S: GradedMF, T: GradedMF) -> _Layout:
    def twist_of(mat, i, j):
        if mat == 0:
            return T.F1[i] - S.F0[j] - S.h
        return T.F0[i] - S.F1[j]

    return _Layout(twist_of, T.rank, S.rank)


def _add_poly(column, mat, i, j, poly, sign=1):
    for (a, b), c in poly.terms():
        key = (mat, i, j, (a, b))
        column[key] = column.get(key, Fraction(0)) + sign * c


class _HomSystem:
    """Cycle equations and boundary image for Hom(S, T) at twist zero."""

    def __init__(self, S: GradedMF, T: GradedMF):
        if S.f != T.f or S.h != T.h:
            raise MismatchedPotential("morphism spaces need a common potential")
        self.S, self.T = S, T
        self.phi = _phi_layout(S, T)
        self.hl = _h_layout(S, T)
        self._cycle_rows = None
        self._boundary = None

    def cycle_rows(self):
        """The constraint matrix: rows are equation coordinates, columns phi vars."""
        if self._cycle_rows is not None:
            return self._cycle_rows
        S, T = self.S, self.T
        columns = []
        for mat, i, j, mono in self.phi.keys:
            m = BivariatePolynomial.monomial(1, *mono)
            col: dict = {}
            if mat == 0:
                # eq1 gets -q0T[r][i] * m at (1, r, j); eq2 gets m * q1S[j][k] at (2, i, k)
                for r in range(T.rank):
                    if not T.q0[r][i].is_zero:
                        _add_poly(col, 1, r, j, T.q0[r][i] * m, sign=-1)
                for k in range(S.rank):
                    if not S.q1[j][k].is_zero:
                        _add_poly(col, 2, i, k, m * S.q1[j][k])
            else:
                for k in range(S.rank):
                    if not S.q0[j][k].is_zero:
                        _add_poly(col, 1, i, k, m * S.q0[j][k])
                for r in range(T.rank):
                    if not T.q1[r][i].is_zero:
                        _add_poly(col, 2, r, j, T.q1[r][i] * m, sign=-1)
            columns.append(col)
        row_keys = sorted({key for col in columns for key in col})
        row_index = {key: r for r, key in enumerate(row_keys)}
        rows = [[Fraction(0)] * len(self.phi) for _ in row_keys]
        for v, col in enumerate(columns):
            for key, value in col.items():
                rows[row_index[key]][v] = value
        self._cycle_rows = rows
        return rows

    def boundary_matrix(self):
        """Matrix of the boundary map: rows phi coords, columns homotopy vars."""
        if self._boundary is not None:
            return self._boundary
        S, T = self.S, self.T
        nphi = len(self.phi)
        cols = []
        for mat, i, j, mono in self.hl.keys:
            m = BivariatePolynomial.monomial(1, *mono)
            col: dict = {}
            if mat == 1:
                # h1 unit at (i, j): phi0[i][k] += m*q0S[j][k]; phi1[r][j] += q0T[r][i]*m
                for k in range(S.rank):
                    if not S.q0[j][k].is_zero:
                        _add_poly(col, 0, i, k, m * S.q0[j][k])
                for r in range(T.rank):
                    if not T.q0[r][i].is_zero:
                        _add_poly(col, 1, r, j, T.q0[r][i] * m)
            else:
                # h0 unit at (i, j): phi0[r][j] += q1T[r][i]*m; phi1[i][k] += m*q1S[j][k]
                for r in range(T.rank):
                    if not T.q1[r][i].is_zero:
                        _add_poly(col, 0, r, j, T.q1[r][i] * m)
                for k in range(S.rank):
                    if not S.q1[j][k].is_zero:
                        _add_poly(col, 1, i, k, m * S.q1[j][k])
            vec = [Fraction(0)] * nphi
            for key, value in col.items():
                vec[self.phi.index[key]] = value
            cols.append(vec)
        self._boundary = cols
        return cols

    def cycle_dim(self) -> int:
        rows = self.cycle_rows()
        if not rows:
            return len(self.phi)
        return len(self.phi) - linalg.rank(rows)

    def boundary_dim(self) -> int:
        cols = self.boundary_matrix()
        if not cols:
            return 0
        return linalg.rank(cols)

    def dim(self) -> int:
        return self.cycle_dim() - self.boundary_dim()

    def vectorize(self, phi: MFMorphism):
        vec = [Fraction(0)] * len(self.phi)
        for mat, matrix in ((0, phi.phi0), (1, phi.phi1)):
            for i, row in enumerate(matrix):
                for j, entry in enumerate(row):
                    for (a, b), c in entry.terms():
                        key = (mat, i, j, (a, b))
                        if key not in self.phi.index:
                            raise ValueError("morphism entry outside the legal grading")
                        vec[self.phi.index[key]] += c
        return vec

    def morphism_from_vector(self, vec) -> MFMorphism:
        S, T = self.S, self.T
        mats = [
            [[dict() for _ in range(S.rank)] for _ in range(T.rank)] for _ in range(2)
        ]
        for value, (mat, i, j, mono) in zip(vec, self.phi.keys):
            if value != 0:
                mats[mat][i][j][mono] = value
        phi0 = [[BivariatePolynomial(d) for d in row] for row in mats[0]]
        phi1 = [[BivariatePolynomial(d) for d in row] for row in mats[1]]
        return make_morphism(S, T, phi0, phi1)

    def homotopy_from_vector(self, vec) -> Homotopy:
        S, T = self.S, self.T
        mats = [
            [[dict() for _ in range(S.rank)] for _ in range(T.rank)] for _ in range(2)
        ]
        for value, (mat, i, j, mono) in zip(vec, self.hl.keys):
            if value != 0:
                mats[mat][i][j][mono] = value
        h0 = tuple(tuple(BivariatePolynomial(d) for d in row) for row in mats[0])
        h1 = tuple(tuple(BivariatePolynomial(d) for d in row) for row in mats[1])
        return Homotopy(source=S, target=T, h0=h0, h1=h1)


# -- public interface ----------------------------------------------------------

_dim_cache: dict = {}
_audit_sinks: list[list] = []


@contextmanager
def audit_hom_calls(sink: list):
    """Record every (source, target, twist, dimension) evaluated in the block."""
    _audit_sinks.append(sink)
    try:
        yield sink
    finally:
        _audit_sinks.pop()


def clear_hom_cache():
    _dim_cache.clear()


def hom_dim(F: GradedMF, G: GradedMF, n: int) -> int:
    """dim of Hom(F, tau^n G) in the homotopy category."""
    key = (F, G, n)
    if key in _dim_cache:
        value = _dim_cache[key]
    else:
        value = _HomSystem(F, tau_shift(G, n)).dim()
        _dim_cache[key] = value
    for sink in _audit_sinks:
        sink.append((F, G, n, value))
    return value


def hom_basis(F: GradedMF, G: GradedMF, n: int) -> list[MFMorphism]:
    """Representatives of a basis of Hom(F, tau^n G), reduced mod boundaries."""
    system = _HomSystem(F, tau_shift(G, n))
    nphi = len(system.phi)
    if nphi == 0:
        return []
    rows = system.cycle_rows()
    kernel = linalg.kernel_basis(rows, nphi) if rows else linalg.kernel_basis([], nphi)
    span = linalg.SpanTracker(nphi)
    for col in system.boundary_matrix():
        span.add(col)
    reps = []
    for vec in kernel:
        residue = span.reduce(vec)
        lead = next((x for x in residue if x != 0), None)
        if lead is None:
            continue
        residue = [x / lead for x in residue]
        span.add(residue)
        reps.append(system.morphism_from_vector(residue))
    expected = hom_dim(F, G, n)
    assert len(reps) == expected, "basis extraction disagrees with dimension count"
    return reps


def is_nullhomotopic(phi: MFMorphism):
    """An explicit homotopy witnessing phi ~ 0, or None if there is none."""
    bad = morphism_violations(phi)
    if bad:
        raise ValueError("; ".join(bad))
    system = _HomSystem(phi.source, phi.target)
    target_vec = system.vectorize(phi)
    cols = system.boundary_matrix()
    nphi = len(system.phi)
    if not cols:
        if all(v == 0 for v in target_vec):
            return system.homotopy_from_vector([])
        return None
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(nphi)]
    solution = linalg.solve(rows, target_vec)
    if solution is None:
        return None
    return system.homotopy_from_vector(solution)


def morphism_combination(basis: list[MFMorphism], coeffs) -> MFMorphism:
    """Exact linear combination of morphisms with common endpoints."""
    if not basis:
        raise ValueError("empty basis")
    S, T = basis[0].source, basis[0].target
    phi0 = [[ZERO for _ in range(S.rank)] for _ in range(T.rank)]
    phi1 = [[ZERO for _ in range(S.rank)] for _ in range(T.rank)]
    for c, rep in zip(coeffs, basis):
        if c == 0:
            continue
        for i in range(T.rank):
            for j in range(S.rank):
                phi0[i][j] = phi0[i][j] + rep.phi0[i][j].scale(c)
                phi1[i][j] = phi1[i][j] + rep.phi1[i][j].scale(c)
    return make_morphism(S, T, phi0, phi1)


def solve_left_inverse(phi: MFMorphism, candidates: list[MFMorphism]):
    """A combination psi of candidates with psi o phi ~ id on phi's source.

    ``candidates`` are morphisms target -> source; returns psi or None.  The
    defining condition is one exact linear system in the combination
    coefficients and a homotopy on End(source).
    """
    if not candidates:
        return None
    F = phi.source
    system = _HomSystem(F, F)
    id_vec = system.vectorize(identity_morphism(F))
    comp_cols = [system.vectorize(compose(cand, phi)) for cand in candidates]
    boundary_cols = system.boundary_matrix()
    nphi = len(system.phi)
    ncols = len(comp_cols) + len(boundary_cols)
    rows = []
    for r in range(nphi):
        row = [comp_cols[k][r] for k in range(len(comp_cols))]
        row += [boundary_cols[c][r] for c in range(len(boundary_cols))]
        rows.append(row)
    if ncols == 0:
        return None
    solution = linalg.solve(rows, id_vec)
    if solution is None:
        return None
    return morphism_combination(candidates, solution[: len(comp_cols)])


# -- twist windows and spectra ---------------------------------------------------


def twist_window(params: DeformationParams, F: GradedMF, G: GradedMF) -> tuple[int, int]:
    """An interval [lo, hi] containing every twist with nonzero hom_dim."""
    RF, _ = reduce_mf(F)
    RG, _ = reduce_mf(G)
    if RF.rank == 0 or RG.rank == 0:
        return (0, -1)
    left = recognize_rank1_sum(params, RF)
    right = recognize_rank1_sum(params, RG)
    mu = params.mu
    if left is not None and right is not None:
        lo = None
        hi = None
        for (I, alpha) in left:
            for (J, beta) in right:
                start = (alpha - beta) + max(0, len(I) - len(J))
                end = start + mu - 1
                lo = start if lo is None else min(lo, start)
                hi = end if hi is None else max(hi, end)
        return (lo, hi)
    onset0 = [RF.F0[j] - RG.F0[i] for j in range(RF.rank) for i in range(RG.rank)]
    onset1 = [RF.F1[j] - RG.F1[i] for j in range(RF.rank) for i in range(RG.rank)]
    lo = max(min(onset0), min(onset1))
    hi = max(max(onset0), max(onset1)) + (2 * params.h - 4) + params.h
    return (lo, hi)


@dataclass(frozen=True)
class Spectrum:
    """Multiset of phase gaps, with the twist-resolved dimensions behind it."""

    entries: tuple[Fraction, ...]
    by_twist: tuple[tuple[int, int], ...]

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def minimum(self):
        return self.entries[0] if self.entries else None

    def maximum(self):
        return self.entries[-1] if self.entries else None

    def to_json(self):
        return [str(p) for p in self.entries]


def spectrum(
    params: DeformationParams,
    F: GradedMF,
    G: GradedMF,
    window: tuple[int, int] | None = None,
) -> Spectrum:
    """Phases of all twists of G receiving morphisms from F, with multiplicity."""
    if not F.is_reduced or not G.is_reduced:
        raise NotReducedError("spectrum requires reduced factorizations")
    if window is None:
        window = twist_window(params, F, G)
    lo, hi = window
    gap = phase(G) - phase(F)
    entries = []
    by_twist = []
    for n in range(lo, hi + 1):
        d = hom_dim(F, G, n)
        if d:
            by_twist.append((n, d))
            entries.extend([gap + 2 * n] * d)
    entries.sort()
    return Spectrum(entries=tuple(entries), by_twist=tuple(by_twist))


@dataclass
class HomTable:
    """Twist-resolved dimensions of Hom(source, tau^n target) over a window."""

    source: str
    target: str
    window: tuple[int, int]
    dims: dict[int, int]
    bases: dict[int, list[MFMorphism]] | None = None

    def dim_at(self, n: int) -> int:
        return self.dims.get(n, 0)

    def support(self):
        return sorted(n for n, d in self.dims.items() if d)

    def to_json(self):
        return {
            "source": self.source,
            "target": self.target,
            "window": list(self.window),
            "dims": [[n, self.dims[n]] for n in sorted(self.dims) if self.dims[n]],
        }


def hom_table(
    params: DeformationParams,
    F: GradedMF,
    G: GradedMF,
    window: tuple[int, int] | None = None,
    with_bases: bool = False,
    source_label: str = "F",
    target_label: str = "G",
) -> HomTable:
    if window is None:
        window = twist_window(params, F, G)
    lo, hi = window
    dims = {}
    bases = {} if with_bases else None
    for n in range(lo, hi + 1):
        d = hom_dim(F, G, n)
        if d:
            dims[n] = d
            if with_bases:
                bases[n] = hom_basis(F, G, n)
    return HomTable(
        source=source_label, target=target_label, window=window, dims=dims, bases=bases
    )
