"""Deformation parameters for the split polynomial f = prod_i (x + s_i*q).

A parameter set is a tuple of rationals s_1, ..., s_{mu+1}.  The associated
weighted homogeneous potential is

    f(x, q) = prod_i (x + s_i q)
            = x^h + t_1 x^(mu-1) q^2 + ... + t_mu q^(mu+1),       h = mu + 1,

where t_i is the elementary symmetric polynomial of degree i+1 in the roots
(the degree-1 one vanishes because the roots sum to zero).  Both expansions
are computed and compared on construction as a cheap internal cross-check.

The hypersurface f = 0 has an isolated singularity at the origin exactly
when the roots are pairwise distinct; ``is_generic_isolated`` verifies this
independently of the root list by testing the partial derivatives for a
common projective zero (resultant in x after setting q = 1, plus the check
at the point q = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .poly import BivariatePolynomial, Q, X


class DuplicateRootError(ValueError):
    """Repeated root: the deformed hypersurface is singular along a line."""


class NonzeroSumError(ValueError):
    """Root sum must vanish (the degree-1 symmetric function is not a modulus)."""


def elementary_symmetric(values, k: int) -> Fraction:
    """Elementary symmetric polynomial of degree k in the given rationals."""
    vals = [Fraction(v) for v in values]
    if not 1 <= k <= len(vals):
        raise ValueError(f"k = {k} out of range 1..{len(vals)}")
    # e[j] after processing a prefix = j-th elementary symmetric of the prefix
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in vals:
        for j in range(min(k, len(e) - 1), 0, -1):
            e[j] += v * e[j - 1]
    return e[k]


def linear_form(s) -> BivariatePolynomial:
    """The line x + s*q."""
    return X + Q.scale(Fraction(s))


@dataclass(frozen=True)
class DeformationParams:
    """Roots s_1..s_{mu+1} together with all derived data."""

    s: tuple[Fraction, ...]
    relaxed: bool
    mu: int
    h: int
    t: tuple[Fraction, ...]
    f: BivariatePolynomial
    factors: tuple[BivariatePolynomial, ...]

    def factor_product(self, indices) -> BivariatePolynomial:
        """prod_{i in indices} (x + s_i q); empty product is 1."""
        out = BivariatePolynomial.constant(1)
        for i in sorted(indices):
            out = out * self.factors[i - 1]
        return out

    def all_indices(self) -> frozenset[int]:
        return frozenset(range(1, self.h + 1))

    def __repr__(self):
        roots = ",".join(str(v) for v in self.s)
        return f"DeformationParams(s=({roots}))"


def params_from_roots(s, relax: bool = False) -> DeformationParams:
    """Validate a root list and derive mu, h, the t-values and f.

    With ``relax`` set, repeated roots and a nonzero root sum are tolerated
    (needed to build the non-generic configurations that the genericity test
    must reject).
    """
    roots = tuple(Fraction(v) for v in s)
    if len(roots) < 2:
        raise ValueError("need at least two roots")
    if not relax:
        seen = {}
        for i, v in enumerate(roots):
            if v in seen:
                raise DuplicateRootError(
                    f"roots s_{seen[v] + 1} and s_{i + 1} coincide ({v}); the "
                    f"hypersurface is singular along the whole line x + {v}*q = 0"
                )
            seen[v] = i
        if sum(roots) != 0:
            raise NonzeroSumError(f"roots must sum to zero, got {sum(roots)}")
    mu = len(roots) - 1
    h = mu + 1
    factors = tuple(linear_form(v) for v in roots)
    f = BivariatePolynomial.constant(1)
    for fac in factors:
        f = f * fac
    t = tuple(elementary_symmetric(roots, k) for k in range(2, h + 1))
    # cross-check the expansion against the symmetric-function identity
    expected = BivariatePolynomial.monomial(1, h, 0)
    e1 = elementary_symmetric(roots, 1)
    if e1 != 0:
        expected = expected + BivariatePolynomial.monomial(e1, h - 1, 1)
    for i, ti in enumerate(t, start=1):
        if ti != 0:
            expected = expected + BivariatePolynomial.monomial(ti, mu - i, i + 1)
    if f != expected:
        raise AssertionError("expansion mismatch between product and symmetric functions")
    return DeformationParams(
        s=roots, relaxed=relax, mu=mu, h=h, t=t, f=f, factors=factors
    )


# --------------------------------------------------------------------------
# genericity: isolated singularity <=> partials have no common projective zero
# --------------------------------------------------------------------------


def resultant_dehom(p: BivariatePolynomial, r: BivariatePolynomial) -> Fraction:
    """Resultant in x of p(x,1) and r(x,1) via the Sylvester determinant.

    Inputs must be nonzero and homogeneous of positive twist.
    """
    for poly in (p, r):
        if poly.is_zero:
            raise ValueError("resultant of the zero polynomial is undefined")
        tw = poly.homogeneous_twist()
        if not isinstance(tw, int) or tw <= 0:
            raise ValueError("inputs must be homogeneous of positive twist")
    a = p.substitute_q1()
    b = r.substitute_q1()
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        # one input is a power of q; no common root on the affine chart q=1
        return Fraction(1)
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return linalg.determinant(rows)


def common_projective_line_at_infinity(p: BivariatePolynomial, r: BivariatePolynomial) -> bool:
    """Do p and r both vanish at the point [1:0] (the q = 0 direction)?"""
    def vanishes(poly):
        tw = poly.homogeneous_twist()
        if isinstance(tw, int):
            return poly.coefficient(tw, 0) == 0
        return poly.is_zero

    return vanishes(p) and vanishes(r)


def have_common_projective_zero(p: BivariatePolynomial, r: BivariatePolynomial) -> bool:
    """Common zero of two nonzero homogeneous forms in P^1."""
    if p.is_zero or r.is_zero:
        return True
    if common_projective_line_at_infinity(p, r):
        return True
    a = p.substitute_q1()
    b = r.substitute_q1()
    if len(a) - 1 <= 0 and len(b) - 1 <= 0:
        return False
    return resultant_dehom(p, r) == 0


@dataclass(frozen=True)
class GenericityCertificate:
    is_generic: bool
    resultant: Fraction | None
    singular_line: BivariatePolynomial | None
    agrees_with_distinctness: bool

    def describe(self) -> str:
        if self.is_generic:
            return f"isolated singularity (resultant of partials = {self.resultant})"
        line = str(self.singular_line) if self.singular_line is not None else "?"
        return f"non-isolated: all partials vanish on the line {line} = 0"


def is_generic_isolated(params: DeformationParams) -> GenericityCertificate:
    """Decide isolatedness of the singularity from the partial derivatives.

    The verdict is computed from f alone (resultant route) and then compared
    with pairwise distinctness of the roots; the two must agree.
    """
    fx = params.f.derivative("x")
    fq = params.f.derivative("q")
    common = have_common_projective_zero(fx, fq)
    res: Fraction | None
    try:
        res = resultant_dehom(fx, fq)
    except ValueError:
        res = None
    line = None
    if common:
        seen = {}
        for i, v in enumerate(params.s):
            if v in seen:
                line = linear_form(v)
                break
            seen[v] = i
    distinct = len(set(params.s)) == len(params.s)
    return GenericityCertificate(
        is_generic=not common,
        resultant=res,
        singular_line=line,
        agrees_with_distinctness=(not common) == distinct,
    )
