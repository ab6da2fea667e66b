"""Morphism spaces in the homotopy category, twist by twist.

A morphism F -> tau^n G is a pair of matrices commuting with the structure
maps; two morphisms are identified when their difference is a boundary
h1 q0 + q1' h0.  Both spaces are exact linear systems in the monomial
coefficients, so every dimension here is a rank computation over Q.
"""

from gradedmf import (
    build_f_I,
    hom_basis,
    hom_dim,
    is_nullhomotopic,
    oracle_hom_dim,
    params_from_roots,
    spectrum,
    translate,
    twist_window,
)

params = params_from_roots([1, 0, -1])
F1 = build_f_I(params, {1})
F12 = build_f_I(params, {1, 2})

print("dim Hom(F{1}, tau^n F{1}) per twist:")
lo, hi = twist_window(params, F1, F1)
for n in range(lo, hi + 1):
    print(f"  n={n}: {hom_dim(F1, F1, n)}  (dense oracle: {oracle_hom_dim(F1, F1, n)})")

print("\nspectra (phase multisets):")
print("  sp(F{1})          =", spectrum(params, F1, F1).to_json())
print("  sp(F{1}, F{1,2})  =", spectrum(params, F1, F12).to_json())
print("  sp(F{1,2}, F{1})  =", spectrum(params, F12, F1).to_json())
print("  sp(F{1}, F{2,3})  =", spectrum(params, F1, build_f_I(params, {2, 3})).to_json())
print("  sp(F{1}, T F{1})  =", spectrum(params, F1, translate(F1)).to_json())

# Basis representatives are actual morphisms, reduced modulo boundaries.
reps = hom_basis(F1, F1, 1)
print("\nbasis of Hom(F{1}, tau F{1}):")
for rep in reps:
    print("  phi0 =", rep.phi0[0][0], "  phi1 =", rep.phi1[0][0])
    print("  null-homotopic?", is_nullhomotopic(rep) is not None)
