import random

import pytest

from gradedmf.mf import (
    GradedMF,
    MismatchedPotential,
    NotReducedError,
    cone,
    compose,
    direct_sum,
    identity_morphism,
    make_mf,
    mf_from_json,
    mf_to_json,
    mf_violations,
    morphism_violations,
    phase,
    reduce_mf,
    shift_power,
    tau_shift,
    translate,
    zero_mf,
)
from gradedmf.poly import BivariatePolynomial, Q, X, ZERO
from gradedmf.rank_one import (
    DecompositionMismatchError,
    EmptyOrFullSubsetError,
    UnrecognizedFactorError,
    build_f_I,
    build_phi,
    build_phibar,
    monomial_split_x_q,
    rank1_normal_form,
    residue_field_stab,
    split_components,
    stab_codim2,
)
from conftest import proper_subsets


def test_build_examples(p2, p1):
    F = build_f_I(p2, {1})
    assert F.F0 == (0,) and F.F1 == (1,)
    assert F.q0[0][0] == X + Q
    assert F.q1[0][0] == X**2 - X * Q
    G = build_f_I(p2, {1, 2})
    assert G.q0[0][0] == (X + Q) * X and G.q1[0][0] == X - Q and G.F1 == (2,)
    H = build_f_I(p1, {1})
    assert H.q0[0][0] == X + Q and H.q1[0][0] == X - Q
    with pytest.raises(EmptyOrFullSubsetError):
        build_f_I(p2, set())
    with pytest.raises(EmptyOrFullSubsetError):
        build_f_I(p2, {1, 2, 3})


def test_validation_catches_corruption(p2):
    F = build_f_I(p2, {1})
    # break one composition identity
    bad = GradedMF(h=F.h, f=F.f, F0=F.F0, F1=F.F1, q0=F.q0, q1=((X**2,),))
    violations = mf_violations(bad)
    assert any("q1*q0" in v for v in violations)
    # inhomogeneous entry
    bad2 = GradedMF(h=F.h, f=F.f, F0=F.F0, F1=F.F1, q0=((X + Q**2,),), q1=F.q1)
    violations = mf_violations(bad2)
    assert any("homogeneous" in v for v in violations)
    assert mf_violations(F) == []


def test_tau_and_translate(p2, p1):
    F = build_f_I(p2, {1})
    assert tau_shift(F, 0) == F
    assert tau_shift(tau_shift(F, 2), 3) == tau_shift(F, 5)
    assert tau_shift(F, 1).F0 == (1,) and tau_shift(F, 1).F1 == (2,)
    T = translate(build_f_I(p1, {1}))
    assert T.F0 == (1,) and T.F1 == (2,)
    assert T.q0[0][0] == -(X - Q)
    assert T.q1[0][0] == -(X + Q)


def test_translate_square_is_grading_shift(p2, p3):
    for params in (p2, p3):
        for I in proper_subsets(params):
            F = build_f_I(params, I)
            assert translate(translate(F)) == tau_shift(F, params.h)
    # and on a cone-built object
    C = cone(build_phi(p2, {1}, {1, 2}))
    assert translate(translate(C)) == tau_shift(C, p2.h)


def test_shift_power(p2):
    F = build_f_I(p2, {1, 3})
    assert shift_power(F, 0) == F
    assert shift_power(F, 2) == tau_shift(F, p2.h)
    assert shift_power(F, -2) == tau_shift(F, -p2.h)
    assert shift_power(shift_power(F, -1), 1) == F
    assert shift_power(F, 1) == translate(F)


def test_direct_sum(p2, p1):
    F = build_f_I(p2, {1})
    S = direct_sum(F, tau_shift(F, 1))
    assert S.rank == 2
    assert S.F0 == (0, 1) and S.F1 == (1, 2)
    assert mf_violations(S) == []
    assert direct_sum(F, zero_mf(p2.h, p2.f)) == F
    with pytest.raises(MismatchedPotential):
        direct_sum(F, build_f_I(p1, {1}))


def test_cone_and_reduce(p2):
    F = build_f_I(p2, {1})
    # cone of the identity is contractible
    C = cone(identity_morphism(F))
    R, stripped = reduce_mf(C)
    assert R.rank == 0 and stripped == 2
    # the trivial factorization (1, f) strips in one step
    one = BivariatePolynomial.constant(1)
    trivial = make_mf(p2.h, p2.f, (0,), (0,), ((one,),), ((p2.f,),))
    R2, s2 = reduce_mf(trivial)
    assert R2.rank == 0 and s2 == 1
    # already reduced objects are fixed points
    R3, s3 = reduce_mf(F)
    assert R3 == F and s3 == 0
    # cone of the canonical inclusion reduces to rank one
    C4 = cone(build_phi(p2, {1}, {1, 2}))
    R4, s4 = reduce_mf(C4)
    assert R4.rank == 1 and s4 == 1
    assert rank1_normal_form(p2, R4) == (frozenset({2}), 1)


def test_phase_laws(p2):
    for I in proper_subsets(p2):
        F = build_f_I(p2, I)
        assert phase(F) == len(I)
        assert phase(tau_shift(F, 5)) == phase(F) + 10
        assert phase(translate(F)) == phase(F) + p2.h
    with pytest.raises(ValueError):
        phase(zero_mf(p2.h, p2.f))
    C = cone(identity_morphism(build_f_I(p2, {1})))
    with pytest.raises(NotReducedError):
        phase(C)


def test_normal_form_round_trip(p2, p3):
    for params in (p2, p3):
        for I in proper_subsets(params):
            F = build_f_I(params, I, base_twist=2)
            assert rank1_normal_form(params, F) == (I, 2)
            assert F.is_reduced
            assert mf_violations(F) == []


def test_normal_form_unrecognized(p2):
    fake = GradedMF(
        h=p2.h, f=p2.f, F0=(0,), F1=(2,),
        q0=((X**2 + Q**2,),), q1=((X,),),
    )
    with pytest.raises(UnrecognizedFactorError):
        rank1_normal_form(p2, fake)


def test_split_components(p2):
    F = build_f_I(p2, {1})
    G = tau_shift(build_f_I(p2, {2, 3}), -1)
    S = direct_sum(F, G)
    parts = split_components(S)
    assert len(parts) == 2
    assert {rank1_normal_form(p2, part) for part in parts} == {
        (frozenset({1}), 0),
        (frozenset({2, 3}), -1),
    }


def test_stab_codim2(p2, p1):
    # canonical monomial split for mu = 2
    h1, h2 = monomial_split_x_q(p2.f)
    assert h1 == X**2 - Q**2 and h2 == ZERO
    F = stab_codim2(p2.f, X, Q, h1, h2)
    assert F.rank == 2 and mf_violations(F) == []
    assert F.F0 == (0, p2.h - 2) and F.F1 == (p2.h - 1, p2.h - 1)
    # another exact split: f = (x+q)*(x^2-xq) + q*0
    F2 = stab_codim2(p2.f, X + Q, Q, X**2 - X * Q, ZERO)
    assert mf_violations(F2) == []
    with pytest.raises(DecompositionMismatchError):
        stab_codim2(p2.f, X, X, X**2, ZERO)
    # mu = 1: split x^2 - q^2 = x*x + q*(-q)
    g1, g2 = monomial_split_x_q(p1.f)
    assert g1 == X and g2 == -Q
    S = stab_codim2(p1.f, X, Q, g1, g2)
    assert S.q0 == ((X, Q), (Q, X))


def test_residue_field_stab_form(p2):
    rfs = residue_field_stab(p2, 2)
    assert rfs.cone_matches_expected_form
    assert rfs.cone_qq.F0 == (1, 1) and rfs.cone_qq.F1 == (p2.h, 2)
    assert rfs.cone_qq.q0[1][0] == Q and rfs.cone_qq.q0[1][1] == X
    assert rfs.cone_qq.q0[0][0] == -(X + Q) * (X - Q)


def test_morphism_validation(p2):
    phi = build_phi(p2, {1}, {1, 2})
    assert morphism_violations(phi) == []
    assert phi.phi0[0][0] == BivariatePolynomial.constant(1)
    assert phi.phi1[0][0] == X
    phibar = build_phibar(p2, {1, 2}, {1})
    assert phibar.phi0[0][0] == X
    assert phibar.target.F0 == (1,)
    ident = identity_morphism(phi.source)
    assert compose(phi, ident).phi1 == phi.phi1


def test_json_round_trip(p2):
    F = cone(build_phi(p2, {1}, {1, 2}))
    data = mf_to_json(F)
    assert data["f"] == "x^3 - x*q^2"
    assert mf_from_json(data) == F


def _random_rank1(params, rng):
    subsets = proper_subsets(params)
    I = subsets[rng.randrange(len(subsets))]
    return build_f_I(params, I, base_twist=rng.randint(-3, 3))


def test_functor_identities_randomized(p2, p3):
    # every functor output passes full validation; 200+ randomized objects
    rng = random.Random(4)
    for _ in range(220):
        params = p2 if rng.random() < 0.6 else p3
        F = _random_rank1(params, rng)
        G = _random_rank1(params, rng)
        objs = [
            tau_shift(F, rng.randint(-2, 2)),
            translate(F),
            shift_power(F, rng.randint(-3, 3)),
            direct_sum(F, G),
        ]
        for obj in objs:
            assert mf_violations(obj) == []
        assert translate(translate(F)) == tau_shift(F, params.h)


def test_reduce_idempotent_on_cones(p2, p3):
    rng = random.Random(5)
    for _ in range(60):
        params = p2 if rng.random() < 0.7 else p3
        subsets = proper_subsets(params)
        I = subsets[rng.randrange(len(subsets))]
        J = subsets[rng.randrange(len(subsets))]
        if I < J:
            phi = build_phi(params, I, J)
        elif J < I:
            phi = build_phibar(params, I, J)
        else:
            phi = identity_morphism(build_f_I(params, I))
        C = cone(phi)
        R, _ = reduce_mf(C)
        again, more = reduce_mf(R)
        assert again == R and more == 0
        assert R.is_reduced
        assert mf_violations(R) == []
