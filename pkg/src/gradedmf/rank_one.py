"""Rank-one factorizations of f = prod(x + s_i q) and Koszul-type blocks.

For a proper nonempty subset I of {1, ..., mu+1} the rank-one object F_I has

    q0 = prod_{i in I} (x + s_i q),     q1 = prod_{j not in I} (x + s_j q),

on twist data F0 = (b), F1 = (b + |I|).  Up to grading shift these are
exactly the rank-one objects, so a reduced rank-one factorization has the
normal form (subset, base twist); ``rank1_normal_form`` recovers it by
splitting q0 into the known linear factors.

``stab_codim2`` builds the rank-two factorization attached to a length-two
regular sequence (g1, g2) with f = g1 h1 + g2 h2:

    q0 = [[h1, g2], [-h2, g1]],   q1 = [[g1, -g2], [h2, h1]],

on twists (0, h - t1 - t2 ; h - t1, h - t2) where t_i is the twist of g_i.
``residue_field_stab`` applies it to (x, q) with the canonical monomial
split of f (x-divisible monomials to the x side), and also constructs the
comparison object: the cone of multiplication by q on F_{i}, translated
back by T^-1 and shifted by tau^(h-2).  The two are isomorphic; the
isomorphism check itself lives in the homotopy-category layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mf import (
    GradedMF,
    MFMorphism,
    cone,
    make_mf,
    make_morphism,
    shift_power,
    tau_shift,
)
from .params import DeformationParams, have_common_projective_zero
from .poly import BivariatePolynomial, Q, X, ZERO


class EmptyOrFullSubsetError(ValueError):
    """The empty and full subsets produce zero objects, not rank-one ones."""


class RankNotOneError(ValueError):
    pass


class UnrecognizedFactorError(ValueError):
    """q0 does not split into the known linear factors x + s_i q."""


class DecompositionMismatchError(ValueError):
    pass


class NonGenericParameters(ValueError):
    pass


def _check_subset(params: DeformationParams, I) -> frozenset[int]:
    subset = frozenset(int(i) for i in I)
    if not subset or subset == params.all_indices():
        raise EmptyOrFullSubsetError(
            f"subset {sorted(subset)} yields a zero object; need a proper nonempty subset"
        )
    if not subset <= params.all_indices():
        raise ValueError(f"subset {sorted(subset)} not contained in 1..{params.h}")
    return subset


def build_f_I(params: DeformationParams, I, base_twist: int = 0) -> GradedMF:
    """The rank-one factorization F_I, with F0 twist equal to base_twist."""
    subset = _check_subset(params, I)
    q0 = params.factor_product(subset)
    q1 = params.factor_product(params.all_indices() - subset)
    return make_mf(
        h=params.h,
        f=params.f,
        F0=(base_twist,),
        F1=(base_twist + len(subset),),
        q0=((q0,),),
        q1=((q1,),),
    )


def rank1_normal_form(params: DeformationParams, F: GradedMF) -> tuple[frozenset[int], int]:
    """Recover (I, base twist) from a reduced rank-one factorization.

    q0 is scaled monic and matched greedily against the factors x + s_i q.
    """
    if F.rank != 1:
        raise RankNotOneError(f"rank {F.rank} object has no rank-one normal form")
    g = F.q0[0][0]
    if g.is_zero:
        raise UnrecognizedFactorError("q0 is zero")
    members = []
    for i in range(1, params.h + 1):
        quotient = g.divexact(params.factors[i - 1])
        if quotient is not None:
            members.append(i)
            g = quotient
    if g.as_constant() is None:
        raise UnrecognizedFactorError(
            f"q0 leaves non-constant cofactor {g} after splitting off known lines"
        )
    subset = frozenset(members)
    if not subset or subset == params.all_indices():
        raise UnrecognizedFactorError("q0 splits into an empty or full factor set")
    return subset, F.F0[0]


def subset_label(subset, base_twist: int = 0) -> str:
    body = "F{" + ",".join(str(i) for i in sorted(subset)) + "}"
    if base_twist == 0:
        return body
    return f"tau^{base_twist} {body}"


def split_components(F: GradedMF) -> list[GradedMF]:
    """Split into block-diagonal components (connected components of the
    bipartite support graph of q0 and q1); a permutation-blind direct-sum
    decomposition."""
    r = F.rank
    if r == 0:
        return []
    parent = list(range(2 * r))  # 0..r-1: F0 indices, r..2r-1: F1 indices

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(r):
        for j in range(r):
            if not F.q0[i][j].is_zero:
                union(j, r + i)  # q0: column j in F0, row i in F1
            if not F.q1[i][j].is_zero:
                union(r + j, i)  # q1: column j in F1, row i in F0
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for j in range(r):
        groups.setdefault(find(j), ([], []))[0].append(j)
    for i in range(r):
        groups.setdefault(find(r + i), ([], []))[1].append(i)
    parts = []
    for key in sorted(groups, key=lambda k: min(groups[k][0] + [r + m for m in groups[k][1]])):
        f0_idx, f1_idx = groups[key]
        if len(f0_idx) != len(f1_idx):
            # cannot happen for a valid factorization of a nonzero potential
            raise ValueError("unbalanced component in factorization support graph")
        part = make_mf(
            h=F.h,
            f=F.f,
            F0=tuple(F.F0[j] for j in f0_idx),
            F1=tuple(F.F1[i] for i in f1_idx),
            q0=tuple(tuple(F.q0[i][j] for j in f0_idx) for i in f1_idx),
            q1=tuple(tuple(F.q1[j][i] for i in f1_idx) for j in f0_idx),
        )
        parts.append(part)
    return parts


def recognize_rank1_sum(params: DeformationParams, F: GradedMF):
    """Normal forms of all components if every component is rank one, else None."""
    try:
        parts = split_components(F)
    except ValueError:
        return None
    out = []
    for part in parts:
        if part.rank != 1:
            return None
        try:
            out.append(rank1_normal_form(params, part))
        except (RankNotOneError, UnrecognizedFactorError):
            return None
    return out


# -- canonical morphisms between rank-one objects ------------------------------


def build_phi(params: DeformationParams, I, J) -> MFMorphism:
    """The inclusion-type morphism (1, prod_{i in J \\ I}) : F_I -> F_J for I <= J."""
    subset_i = _check_subset(params, I)
    subset_j = _check_subset(params, J)
    if not subset_i <= subset_j:
        raise ValueError(f"{sorted(subset_i)} is not a subset of {sorted(subset_j)}")
    src = build_f_I(params, subset_i)
    tgt = build_f_I(params, subset_j)
    one = BivariatePolynomial.constant(1)
    phi1 = params.factor_product(subset_j - subset_i)
    return make_morphism(src, tgt, ((one,),), ((phi1,),))


def build_phibar(params: DeformationParams, I, J) -> MFMorphism:
    """The projection-type morphism (prod_{i in I \\ J}, 1) : F_I -> tau^(|I|-|J|) F_J for I >= J."""
    subset_i = _check_subset(params, I)
    subset_j = _check_subset(params, J)
    if not subset_j <= subset_i:
        raise ValueError(f"{sorted(subset_j)} is not a subset of {sorted(subset_i)}")
    src = build_f_I(params, subset_i)
    tgt = tau_shift(build_f_I(params, subset_j), len(subset_i) - len(subset_j))
    one = BivariatePolynomial.constant(1)
    phi0 = params.factor_product(subset_i - subset_j)
    return make_morphism(src, tgt, ((phi0,),), ((one,),))


def multiplication_by_q(params: DeformationParams, i: int) -> MFMorphism:
    """Multiplication by q as a morphism F_{i} -> tau F_{i}."""
    src = build_f_I(params, {i})
    tgt = tau_shift(src, 1)
    return make_morphism(src, tgt, ((Q,),), ((Q,),))


# -- Koszul-type stabilizations -------------------------------------------------


def stab_codim2(
    f: BivariatePolynomial,
    g1: BivariatePolynomial,
    g2: BivariatePolynomial,
    h1: BivariatePolynomial,
    h2: BivariatePolynomial,
) -> GradedMF:
    """Rank-two factorization from a regular sequence (g1, g2) with f = g1*h1 + g2*h2."""
    tw = f.homogeneous_twist()
    if not isinstance(tw, int):
        raise ValueError("potential must be nonzero homogeneous")
    h = tw
    if g1 * h1 + g2 * h2 != f:
        raise DecompositionMismatchError("f != g1*h1 + g2*h2")
    if g1.is_zero or g2.is_zero or have_common_projective_zero(g1, g2):
        raise DecompositionMismatchError("(g1, g2) is not a regular sequence")
    t1 = g1.homogeneous_twist()
    t2 = g2.homogeneous_twist()
    if not isinstance(t1, int) or not isinstance(t2, int):
        raise ValueError("g1, g2 must be nonzero homogeneous")
    return make_mf(
        h=h,
        f=f,
        F0=(0, h - t1 - t2),
        F1=(h - t1, h - t2),
        q0=((h1, g2), (-h2, g1)),
        q1=((g1, -g2), (h2, h1)),
    )


def monomial_split_x_q(f: BivariatePolynomial):
    """Write f = x*h1 + q*h2, sending every x-divisible monomial to the x side."""
    h1 = {}
    h2 = {}
    for (a, b), c in f.terms():
        if a >= 1:
            h1[(a - 1, b)] = c
        elif b >= 1:
            h2[(a, b - 1)] = c
        else:
            raise DecompositionMismatchError("constant term cannot be split by (x, q)")
    return BivariatePolynomial(h1), BivariatePolynomial(h2)


@dataclass(frozen=True)
class ResidueFieldStab:
    """The stabilized residue field and its cone-built comparison object."""

    index: int
    stab: GradedMF
    cone_qq: GradedMF
    comparison: GradedMF
    cone_matches_expected_form: bool


def residue_field_stab(params: DeformationParams, i: int = 1) -> ResidueFieldStab:
    """Stabilization of S/(x, q) plus the comparison object T^-1 tau^(h-2) C(q,q)."""
    if len(set(params.s)) != len(params.s):
        raise NonGenericParameters("stabilized residue field needs pairwise distinct roots")
    h1, h2 = monomial_split_x_q(params.f)
    stab = stab_codim2(params.f, X, Q, h1, h2)
    qq = multiplication_by_q(params, i)
    c = cone(qq)
    expected_q0 = (
        (-params.factor_product(params.all_indices() - {i}), ZERO),
        (Q, params.factors[i - 1]),
    )
    expected_q1 = ((-params.factors[i - 1], ZERO), (Q, params.factor_product(params.all_indices() - {i})))
    matches = (
        c.F0 == (1, 1)
        and c.F1 == (params.h, 2)
        and c.q0 == expected_q0
        and c.q1 == expected_q1
    )
    comparison = shift_power(tau_shift(c, params.h - 2), -1)
    return ResidueFieldStab(
        index=i,
        stab=stab,
        cone_qq=c,
        comparison=comparison,
        cone_matches_expected_form=matches,
    )
