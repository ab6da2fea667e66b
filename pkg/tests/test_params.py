from fractions import Fraction

import pytest

from gradedmf.params import (
    DuplicateRootError,
    NonzeroSumError,
    elementary_symmetric,
    have_common_projective_zero,
    is_generic_isolated,
    linear_form,
    params_from_roots,
    resultant_dehom,
)
from gradedmf.poly import Q, X, poly_parse


def test_elementary_symmetric():
    s = [Fraction(1), Fraction(0), Fraction(-1)]
    assert elementary_symmetric(s, 1) == 0
    assert elementary_symmetric(s, 2) == -1
    assert elementary_symmetric(s, 3) == 0
    with pytest.raises(ValueError):
        elementary_symmetric(s, 4)
    with pytest.raises(ValueError):
        elementary_symmetric(s, 0)


def test_params_basic():
    p = params_from_roots([1, 0, -1])
    assert p.mu == 2 and p.h == 3
    assert p.f == poly_parse("x^3 - x*q^2")
    assert p.t == (Fraction(-1), Fraction(0))
    p1 = params_from_roots([1, -1])
    assert p1.mu == 1
    assert p1.f == poly_parse("x^2 - q^2")


def test_params_validation():
    with pytest.raises(DuplicateRootError):
        params_from_roots([1, 1, -2])
    with pytest.raises(NonzeroSumError):
        params_from_roots([1, 2, 3])
    with pytest.raises(ValueError):
        params_from_roots([1])
    # relax admits both defects (needed for genericity counterexamples)
    relaxed = params_from_roots([1, 1, -2], relax=True)
    assert relaxed.mu == 2
    relaxed2 = params_from_roots([1, 2, 3], relax=True)
    assert relaxed2.f.coefficient(2, 1) == 6  # e_1 = 6 shows up


def test_resultant_examples():
    f = poly_parse("x^3 - x*q^2")
    p, r = f.derivative("x"), f.derivative("q")
    assert resultant_dehom(p, r) == Fraction(-4)
    g = (X + Q) ** 2 * X
    gp, gq = g.derivative("x"), g.derivative("q")
    assert resultant_dehom(gp, gq) == 0
    assert have_common_projective_zero(gp, gq)
    # x and q meet only at the origin: the q-power side check handles it
    assert not have_common_projective_zero(X, Q)
    with pytest.raises(ValueError):
        resultant_dehom(poly_parse("0"), X)


def test_genericity_certificates():
    cert = is_generic_isolated(params_from_roots([1, 0, -1]))
    assert cert.is_generic and cert.agrees_with_distinctness
    assert cert.resultant == Fraction(-4)

    bad = is_generic_isolated(params_from_roots([1, 1, -2], relax=True))
    assert not bad.is_generic and bad.agrees_with_distinctness
    assert bad.singular_line == linear_form(1)

    small = is_generic_isolated(params_from_roots([1, -1]))
    assert small.is_generic and small.agrees_with_distinctness


def test_factor_product():
    p = params_from_roots([1, 0, -1])
    assert p.factor_product({1}) == X + Q
    assert p.factor_product({1, 2, 3}) == p.f
    assert p.factor_product(set()) == poly_parse("1")
