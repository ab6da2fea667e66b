"""Rank-one factorizations, the two shift functors, cones and reduction.

Every proper nonempty subset I of the root indices gives a rank-one
factorization F_I with q0 = prod_{i in I}(x + s_i q) and q1 the
complementary product.  The triangulated shift T swaps the two matrices
with signs, and T applied twice is literally the grading shift by h.
"""

from gradedmf import (
    build_f_I,
    build_phi,
    cone,
    identity_morphism,
    mf_to_json,
    params_from_roots,
    phase,
    rank1_normal_form,
    reduce_mf,
    subset_label,
    tau_shift,
    translate,
)

params = params_from_roots([1, 0, -1])
F1 = build_f_I(params, {1})
print("F{1}  q0 =", F1.q0[0][0], "  q1 =", F1.q1[0][0], "  twists", F1.F0, F1.F1)
print("phase:", phase(F1))

T = translate(F1)
print("T F{1}  q0 =", T.q0[0][0], "  q1 =", T.q1[0][0], "  twists", T.F0, T.F1)
print("T(T(F)) == tau^h F:", translate(T) == tau_shift(F1, params.h))

# The cone of the canonical inclusion F_{1} -> F_{1,2} carries one trivial
# summand; stripping it leaves tau F_{2}.
phi = build_phi(params, {1}, {1, 2})
C = cone(phi)
print("\ncone twists:", C.F0, C.F1)
reduced, stripped = reduce_mf(C)
nf = rank1_normal_form(params, reduced)
print(f"reduced to {subset_label(*nf)} after stripping {stripped} trivial summand(s)")

# The cone of an identity is entirely trivial.
K, stripped = reduce_mf(cone(identity_morphism(F1)))
print("cone(identity) strips to rank", K.rank, "in", stripped, "steps")

# Objects serialize to a plain JSON schema.
print("\nJSON form of the reduced cone:")
print(mf_to_json(reduced))
