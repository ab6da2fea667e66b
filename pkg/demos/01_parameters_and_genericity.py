"""Deformation parameters and the isolated-singularity test.

A parameter set is a tuple of distinct rationals s_1, ..., s_{mu+1} summing
to zero.  The potential is the split form f = prod_i (x + s_i q); its
coefficients in the basis x^(mu-i) q^(i+1) are the elementary symmetric
values t_i of the roots.
"""

from gradedmf import is_generic_isolated, params_from_roots

params = params_from_roots([1, 0, -1])
print("roots      :", [str(v) for v in params.s])
print("mu, h      :", params.mu, params.h)
print("potential  :", params.f)
print("t-values   :", [str(v) for v in params.t])

cert = is_generic_isolated(params)
print("generic    :", cert.is_generic)
print("certificate:", cert.describe())

# A repeated root makes the hypersurface singular along a whole line; the
# relax flag lets us build such a configuration on purpose.
bad = params_from_roots([1, 1, -2], relax=True)
bad_cert = is_generic_isolated(bad)
print()
print("roots      :", [str(v) for v in bad.s])
print("generic    :", bad_cert.is_generic)
print("certificate:", bad_cert.describe())

# Rational roots work the same way.
frac = params_from_roots(["1/2", "1/3", "-5/6"])
print()
print("roots      :", [str(v) for v in frac.s])
print("potential  :", frac.f)
print("generic    :", is_generic_isolated(frac).is_generic)
