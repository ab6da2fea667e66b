from itertools import combinations

import pytest

from gradedmf import params_from_roots


@pytest.fixture(scope="session")
def p2():
    return params_from_roots([1, 0, -1])


@pytest.fixture(scope="session")
def p1():
    return params_from_roots([1, -1])


@pytest.fixture(scope="session")
def p3():
    return params_from_roots([3, 1, -1, -3])


def proper_subsets(params):
    indices = sorted(params.all_indices())
    out = []
    for r in range(1, params.h):
        out.extend(frozenset(c) for c in combinations(indices, r))
    return out


def rank1_expected_dim(params, I, J, n: int) -> int:
    """Combinatorial closed form for dim Hom(F_I, tau^n F_J), base twists zero.

    For rank-one objects the commutation equations force
    (phi0, phi1) = (g_{I\\J} psi, g_{J\\I} psi) with psi free, and the
    boundary space is generated by g_{I^J} h1 + g_{complement of I u J} h0,
    so the quotient is the twist-(n - |I\\J|) piece of the complete
    intersection k[x,q]/(g1, g2) with deg g1 = |I^J|, deg g2 = h - |I u J|.
    Its Hilbert function is the convolution of two geometric polynomials.
    """
    I, J = frozenset(I), frozenset(J)
    a = len(I & J)
    b = params.h - len(I | J)
    m = n - len(I - J)
    if a == 0 or b == 0:
        return 0
    if m < 0 or m > a + b - 2:
        return 0
    return min(m, a - 1, b - 1, a + b - 2 - m) + 1
