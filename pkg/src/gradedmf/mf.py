"""Graded matrix factorizations of a weighted homogeneous potential.

Objects and conventions
-----------------------
A graded matrix factorization of a potential f (homogeneous of twist h in
x, q, both of weight 1) is a quadruple (F0, F1, q0, q1): F0 and F1 are
graded free modules recorded by their integer twist sequences, q0 and q1
are square polynomial matrices with

    q1 @ q0 == f * id == q0 @ q1        (exactly),

q0 being the degree-zero map F0 -> F1 and q1 the degree-two map F1 -> F0.
Rows index the target, columns the source.  The grading forces each entry
to be homogeneous of a twist read off the endpoint twist sequences:

    q0[i][j]  : F1[i] - F0[j]
    q1[i][j]  : F0[i] - F1[j] + h

A morphism is a pair of degree-zero matrices (phi0, phi1) commuting with
the structure maps; it is stored with its source and target objects (a
morphism "into tau^n G" simply has ``tau_shift(G, n)`` as its target).  A
homotopy is a pair (h0 : F0 -> F1' of degree minus two, h1 : F1 -> F0' of
degree zero); entry twists:

    phi0[i][j] : T.F0[i] - S.F0[j]       phi1[i][j] : T.F1[i] - S.F1[j]
    h0[i][j]   : T.F1[i] - S.F0[j] - h   h1[i][j]   : T.F0[i] - S.F1[j]

The functors: ``tau_shift`` adds n to every twist and keeps the matrices;
``translate`` (the triangulated shift T) maps (F0, F1, q0, q1) to
(F1, F1 twists of F0 + h, -q1, -q0), so that translate applied twice is
literally ``tau_shift(-, h)`` -- the signs cancel on the nose.  The mapping
cone of a morphism F -> G is the block factorization

    cone.q0 = [[-F.q1, 0], [phi1, G.q0]]
    cone.q1 = [[-F.q0, 0], [phi0, G.q1]]

on F0 = F.F1 (+) G.F0 and F1 = (F.F0 + h) (+) G.F1.

``reduce_mf`` strips trivial rank-one summands by exact row/column
elimination at invertible (nonzero constant) entries, scanning q0 then q1
in row-major order, so reduced forms are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import BivariatePolynomial, ZERO, poly_parse

PolyMatrix = tuple[tuple[BivariatePolynomial, ...], ...]


class InvalidFactorization(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class MismatchedPotential(ValueError):
    pass


class NotReducedError(ValueError):
    pass


# -- polynomial matrix helpers ----------------------------------------------


def _freeze(rows) -> PolyMatrix:
    return tuple(tuple(row) for row in rows)


def _mat_mul(a, b, n: int, m: int, k: int):
    out = [[ZERO for _ in range(k)] for _ in range(n)]
    for i in range(n):
        for t in range(m):
            left = a[i][t]
            if left.is_zero:
                continue
            for j in range(k):
                if not b[t][j].is_zero:
                    out[i][j] = out[i][j] + left * b[t][j]
    return out


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_neg(a):
    return [[-x for x in row] for row in a]


def _is_f_times_identity(mat, f, n: int) -> bool:
    for i in range(n):
        for j in range(n):
            want = f if i == j else ZERO
            if mat[i][j] != want:
                return False
    return True


def _identity_matrix(n: int):
    one = BivariatePolynomial.constant(1)
    return [[one if i == j else ZERO for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class GradedMF:
    """A graded matrix factorization; use ``make_mf`` to construct validated ones."""

    h: int
    f: BivariatePolynomial
    F0: tuple[int, ...]
    F1: tuple[int, ...]
    q0: PolyMatrix
    q1: PolyMatrix

    @property
    def rank(self) -> int:
        return len(self.F0)

    @property
    def is_reduced(self) -> bool:
        for mat in (self.q0, self.q1):
            for row in mat:
                for entry in row:
                    c = entry.as_constant()
                    if c is not None and c != 0:
                        return False
        return True

    def __repr__(self):
        return f"GradedMF(rank={self.rank}, F0={self.F0}, F1={self.F1})"


def mf_violations(F: GradedMF) -> list[str]:
    """All invariant violations of a candidate factorization (empty = valid)."""
    out = []
    r = len(F.F0)
    if len(F.F1) != r:
        out.append(f"rank mismatch: |F0|={r}, |F1|={len(F.F1)}")
        return out
    if F.f.is_zero or not F.f.is_homogeneous_of(F.h):
        out.append(f"potential is not homogeneous of twist {F.h}")
    for name, mat in (("q0", F.q0), ("q1", F.q1)):
        if len(mat) != r or any(len(row) != r for row in mat):
            out.append(f"{name} is not {r}x{r}")
            return out
    for i in range(r):
        for j in range(r):
            t0 = F.F1[i] - F.F0[j]
            if not F.q0[i][j].is_homogeneous_of(t0):
                out.append(f"q0[{i}][{j}] = {F.q0[i][j]} not homogeneous of twist {t0}")
            t1 = F.F0[i] - F.F1[j] + F.h
            if not F.q1[i][j].is_homogeneous_of(t1):
                out.append(f"q1[{i}][{j}] = {F.q1[i][j]} not homogeneous of twist {t1}")
    if not _is_f_times_identity(_mat_mul(F.q1, F.q0, r, r, r), F.f, r):
        out.append("q1*q0 != f*id")
    if not _is_f_times_identity(_mat_mul(F.q0, F.q1, r, r, r), F.f, r):
        out.append("q0*q1 != f*id")
    return out


def make_mf(h, f, F0, F1, q0, q1) -> GradedMF:
    F = GradedMF(h=h, f=f, F0=tuple(F0), F1=tuple(F1), q0=_freeze(q0), q1=_freeze(q1))
    violations = mf_violations(F)
    if violations:
        raise InvalidFactorization(violations)
    return F


def zero_mf(h: int, f: BivariatePolynomial) -> GradedMF:
    return GradedMF(h=h, f=f, F0=(), F1=(), q0=(), q1=())


# -- functors ----------------------------------------------------------------


def tau_shift(F: GradedMF, n: int) -> GradedMF:
    """Grading shift: add n to every twist, matrices unchanged."""
    if n == 0:
        return F
    return GradedMF(
        h=F.h,
        f=F.f,
        F0=tuple(t + n for t in F.F0),
        F1=tuple(t + n for t in F.F1),
        q0=F.q0,
        q1=F.q1,
    )


def translate(F: GradedMF) -> GradedMF:
    """The triangulated shift T: swap the factors with signs."""
    return GradedMF(
        h=F.h,
        f=F.f,
        F0=F.F1,
        F1=tuple(t + F.h for t in F.F0),
        q0=_freeze(_mat_neg(F.q1)),
        q1=_freeze(_mat_neg(F.q0)),
    )


def shift_power(F: GradedMF, p: int) -> GradedMF:
    """T^p, computed through T^2 = tau^h: tau^(floor(p/2)*h) of F or of TF."""
    base = F if p % 2 == 0 else translate(F)
    return tau_shift(base, ((p - (p % 2)) // 2) * F.h)


def direct_sum(F: GradedMF, G: GradedMF) -> GradedMF:
    if F.f != G.f or F.h != G.h:
        raise MismatchedPotential("direct sum of factorizations of different potentials")
    rf, rg = F.rank, G.rank

    def block(a, b):
        rows = []
        for i in range(rf):
            rows.append(tuple(a[i]) + tuple(ZERO for _ in range(rg)))
        for i in range(rg):
            rows.append(tuple(ZERO for _ in range(rf)) + tuple(b[i]))
        return tuple(rows)

    return GradedMF(
        h=F.h,
        f=F.f,
        F0=F.F0 + G.F0,
        F1=F.F1 + G.F1,
        q0=block(F.q0, G.q0),
        q1=block(F.q1, G.q1),
    )


def sum_of(parts, h: int, f: BivariatePolynomial) -> GradedMF:
    total = zero_mf(h, f)
    for part in parts:
        total = direct_sum(total, part)
    return total


def phase(F: GradedMF) -> Fraction:
    """Average twist sum (1/rank) * sum(F0 twists + F1 twists); needs reduced F."""
    if F.rank == 0:
        raise ValueError("phase of the zero object is undefined")
    if not F.is_reduced:
        raise NotReducedError("phase requires a reduced factorization")
    return Fraction(sum(F.F0) + sum(F.F1), F.rank)


# -- morphisms and homotopies -------------------------------------------------


@dataclass(frozen=True)
class MFMorphism:
    """Degree-zero morphism source -> target (target carries any twist)."""

    source: GradedMF
    target: GradedMF
    phi0: PolyMatrix
    phi1: PolyMatrix

    def __repr__(self):
        return f"MFMorphism({self.source!r} -> {self.target!r})"


@dataclass(frozen=True)
class Homotopy:
    """Pair (h0: F0 -> F1' of degree -2, h1: F1 -> F0' of degree 0)."""

    source: GradedMF
    target: GradedMF
    h0: PolyMatrix
    h1: PolyMatrix


def morphism_violations(phi: MFMorphism) -> list[str]:
    S, T = phi.source, phi.target
    out = []
    if S.f != T.f or S.h != T.h:
        out.append("source and target factor different potentials")
        return out
    rs, rt = S.rank, T.rank
    for name, mat, rows, cols in (("phi0", phi.phi0, rt, rs), ("phi1", phi.phi1, rt, rs)):
        if len(mat) != rows or any(len(row) != cols for row in mat):
            out.append(f"{name} is not {rows}x{cols}")
            return out
    for i in range(rt):
        for j in range(rs):
            t0 = T.F0[i] - S.F0[j]
            if not phi.phi0[i][j].is_homogeneous_of(t0):
                out.append(f"phi0[{i}][{j}] not homogeneous of twist {t0}")
            t1 = T.F1[i] - S.F1[j]
            if not phi.phi1[i][j].is_homogeneous_of(t1):
                out.append(f"phi1[{i}][{j}] not homogeneous of twist {t1}")
    lhs = _mat_mul(phi.phi1, S.q0, rt, rs, rs)
    rhs = _mat_mul(T.q0, phi.phi0, rt, rt, rs)
    if _mat_sub(lhs, rhs) != [[ZERO] * rs for _ in range(rt)]:
        out.append("phi1*q0 != q0'*phi0")
    lhs = _mat_mul(phi.phi0, S.q1, rt, rs, rs)
    rhs = _mat_mul(T.q1, phi.phi1, rt, rt, rs)
    if _mat_sub(lhs, rhs) != [[ZERO] * rs for _ in range(rt)]:
        out.append("phi0*q1 != q1'*phi1")
    return out


def make_morphism(source: GradedMF, target: GradedMF, phi0, phi1) -> MFMorphism:
    phi = MFMorphism(source=source, target=target, phi0=_freeze(phi0), phi1=_freeze(phi1))
    violations = morphism_violations(phi)
    if violations:
        raise InvalidFactorization(violations)
    return phi


def identity_morphism(F: GradedMF) -> MFMorphism:
    eye = _freeze(_identity_matrix(F.rank))
    return MFMorphism(source=F, target=F, phi0=eye, phi1=eye)


def zero_morphism(source: GradedMF, target: GradedMF) -> MFMorphism:
    z0 = _freeze([[ZERO] * source.rank for _ in range(target.rank)])
    return MFMorphism(source=source, target=target, phi0=z0, phi1=z0)


def compose(psi: MFMorphism, phi: MFMorphism) -> MFMorphism:
    """psi after phi; phi.target must equal psi.source on the nose."""
    if phi.target != psi.source:
        raise ValueError("morphisms are not composable (target != source)")
    n, m, k = psi.target.rank, psi.source.rank, phi.source.rank
    return MFMorphism(
        source=phi.source,
        target=psi.target,
        phi0=_freeze(_mat_mul(psi.phi0, phi.phi0, n, m, k)),
        phi1=_freeze(_mat_mul(psi.phi1, phi.phi1, n, m, k)),
    )


def morphism_sub(phi: MFMorphism, psi: MFMorphism) -> MFMorphism:
    if phi.source != psi.source or phi.target != psi.target:
        raise ValueError("morphism difference needs equal endpoints")
    return MFMorphism(
        source=phi.source,
        target=phi.target,
        phi0=_freeze(_mat_sub(phi.phi0, psi.phi0)),
        phi1=_freeze(_mat_sub(phi.phi1, psi.phi1)),
    )


def morphism_tau(phi: MFMorphism, n: int) -> MFMorphism:
    return MFMorphism(
        source=tau_shift(phi.source, n),
        target=tau_shift(phi.target, n),
        phi0=phi.phi0,
        phi1=phi.phi1,
    )


def morphism_translate(phi: MFMorphism) -> MFMorphism:
    return MFMorphism(
        source=translate(phi.source),
        target=translate(phi.target),
        phi0=phi.phi1,
        phi1=phi.phi0,
    )


def morphism_shift_power(phi: MFMorphism, p: int) -> MFMorphism:
    base = phi if p % 2 == 0 else morphism_translate(phi)
    h = phi.source.h
    return morphism_tau(base, ((p - (p % 2)) // 2) * h)


def homotopy_violations(hty: Homotopy) -> list[str]:
    S, T = hty.source, hty.target
    out = []
    rs, rt = S.rank, T.rank
    for name, mat in (("h0", hty.h0), ("h1", hty.h1)):
        if len(mat) != rt or any(len(row) != rs for row in mat):
            out.append(f"{name} is not {rt}x{rs}")
            return out
    for i in range(rt):
        for j in range(rs):
            t0 = T.F1[i] - S.F0[j] - S.h
            if not hty.h0[i][j].is_homogeneous_of(t0):
                out.append(f"h0[{i}][{j}] not homogeneous of twist {t0}")
            t1 = T.F0[i] - S.F1[j]
            if not hty.h1[i][j].is_homogeneous_of(t1):
                out.append(f"h1[{i}][{j}] not homogeneous of twist {t1}")
    return out


def boundary_of(hty: Homotopy) -> MFMorphism:
    """The null-homotopic morphism (h1*q0 + q1'*h0, q0'*h1 + h0*q1)."""
    S, T = hty.source, hty.target
    rs, rt = S.rank, T.rank
    phi0 = _mat_mul(hty.h1, S.q0, rt, rs, rs)
    phi0 = [
        [a + b for a, b in zip(r1, r2)]
        for r1, r2 in zip(phi0, _mat_mul(T.q1, hty.h0, rt, rt, rs))
    ]
    phi1 = _mat_mul(T.q0, hty.h1, rt, rt, rs)
    phi1 = [
        [a + b for a, b in zip(r1, r2)]
        for r1, r2 in zip(phi1, _mat_mul(hty.h0, S.q1, rt, rs, rs))
    ]
    return MFMorphism(source=S, target=T, phi0=_freeze(phi0), phi1=_freeze(phi1))


def witnesses_homotopy(hty: Homotopy, phi: MFMorphism, psi: MFMorphism) -> bool:
    """Does hty witness phi ~ psi?"""
    diff = morphism_sub(phi, psi)
    bd = boundary_of(hty)
    return diff.phi0 == bd.phi0 and diff.phi1 == bd.phi1


# -- mapping cone -------------------------------------------------------------


def cone(phi: MFMorphism) -> GradedMF:
    """Mapping cone of a (twist-zero) morphism, as a block factorization."""
    violations = morphism_violations(phi)
    if violations:
        raise InvalidFactorization(violations)
    S, T = phi.source, phi.target
    rs, rt = S.rank, T.rank
    h = S.h
    F0 = S.F1 + T.F0
    F1 = tuple(t + h for t in S.F0) + T.F1

    def blocks(upper_left, lower_left, lower_right):
        rows = []
        for i in range(rs):
            rows.append(tuple(upper_left[i]) + tuple(ZERO for _ in range(rt)))
        for i in range(rt):
            rows.append(tuple(lower_left[i]) + tuple(lower_right[i]))
        return tuple(rows)

    q0 = blocks(_mat_neg(S.q1), phi.phi1, T.q0)
    q1 = blocks(_mat_neg(S.q0), phi.phi0, T.q1)
    result = GradedMF(h=h, f=S.f, F0=F0, F1=F1, q0=q0, q1=q1)
    bad = mf_violations(result)
    if bad:
        raise InvalidFactorization(bad)
    return result


def triangle_inclusion(phi: MFMorphism) -> MFMorphism:
    """The canonical map target -> cone(phi) (zero block over the identity)."""
    C = cone(phi)
    rt, rs = phi.target.rank, phi.source.rank
    eye = _identity_matrix(rt)
    block = [[ZERO] * rt for _ in range(rs)] + [list(r) for r in eye]
    return make_morphism(phi.target, C, block, block)


# -- reduction ----------------------------------------------------------------


def _find_unit(mat):
    for i, row in enumerate(mat):
        for j, entry in enumerate(row):
            c = entry.as_constant()
            if c is not None and c != 0:
                return i, j, c
    return None


def _strip_at(A, B, i0: int, j0: int, c: Fraction):
    """Remove the trivial summand at the unit entry A[i0][j0] = c.

    A is a map U -> V (rows index V, columns U) and B the complementary map
    V -> U of the factorization.  Performs the exact change of basis that
    clears row i0 and column j0 of A, then deletes V[i0] and U[j0].
    """
    nV = len(A)
    nU = len(A[0]) if A else 0
    # clear column j0 of A by row operations; compensate on columns of B
    for i in range(nV):
        if i == i0 or A[i][j0].is_zero:
            continue
        u = A[i][j0].divexact(BivariatePolynomial.constant(c))
        A[i] = [a - u * b for a, b in zip(A[i], A[i0])]
        for r in range(nU):
            B[r][i0] = B[r][i0] + u * B[r][i]
    # clear row i0 of A by column operations; compensate on rows of B
    for j in range(nU):
        if j == j0 or A[i0][j].is_zero:
            continue
        w = A[i0][j].divexact(BivariatePolynomial.constant(c))
        for r in range(nV):
            A[r][j] = A[r][j] - w * A[r][j0]
        B[j0] = [a + w * b for a, b in zip(B[j0], B[j])]
    # the complementary row/column of B vanish automatically
    for r in range(nU):
        if r != j0:
            assert B[r][i0].is_zero, "stray entry while stripping a trivial summand"
    for cidx in range(nV):
        if cidx != i0:
            assert B[j0][cidx].is_zero, "stray entry while stripping a trivial summand"
    A_new = [
        [A[i][j] for j in range(nU) if j != j0] for i in range(nV) if i != i0
    ]
    B_new = [
        [B[i][j] for j in range(nV) if j != i0] for i in range(nU) if i != j0
    ]
    return A_new, B_new


def reduce_mf(F: GradedMF) -> tuple[GradedMF, int]:
    """Strip all trivial rank-one summands; returns (reduced object, count).

    Deterministic: always eliminates at the first nonzero constant entry of
    q0, then of q1, in row-major order.
    """
    q0 = [list(row) for row in F.q0]
    q1 = [list(row) for row in F.q1]
    F0 = list(F.F0)
    F1 = list(F.F1)
    stripped = 0
    while True:
        hit = _find_unit(q0)
        if hit is not None:
            i0, j0, c = hit
            q0, q1 = _strip_at(q0, q1, i0, j0, c)
            del F1[i0]
            del F0[j0]
        else:
            hit = _find_unit(q1)
            if hit is None:
                break
            i0, j0, c = hit
            q1, q0 = _strip_at(q1, q0, i0, j0, c)
            del F0[i0]
            del F1[j0]
        stripped += 1
    result = GradedMF(
        h=F.h, f=F.f, F0=tuple(F0), F1=tuple(F1), q0=_freeze(q0), q1=_freeze(q1)
    )
    bad = mf_violations(result)
    if bad:
        raise InvalidFactorization(bad)
    return result, stripped


# -- JSON ----------------------------------------------------------------------


def mf_to_json(F: GradedMF) -> dict:
    return {
        "h": F.h,
        "f": str(F.f),
        "F0": list(F.F0),
        "F1": list(F.F1),
        "q0": [[str(e) for e in row] for row in F.q0],
        "q1": [[str(e) for e in row] for row in F.q1],
    }


def mf_from_json(data: dict) -> GradedMF:
    return make_mf(
        h=int(data["h"]),
        f=poly_parse(data["f"]),
        F0=[int(t) for t in data["F0"]],
        F1=[int(t) for t in data["F1"]],
        q0=[[poly_parse(e) for e in row] for row in data["q0"]],
        q1=[[poly_parse(e) for e in row] for row in data["q1"]],
    )
