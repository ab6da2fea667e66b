"""Left mutations and the Serre comparison for the final object.

One mutation step replaces X by T^-1 of the cone of the evaluation map
from the sum of shifted copies of E indexed by Hom(E, T^p X).  Chaining the
steps across E_{2mu-1}, ..., E_1 and applying T^(2mu-1) to the result sends
the final object E_{2mu} to tau^(mu-1) E_{2mu}: the grading shift by
mu - 1 acts as the Serre functor.
"""

from gradedmf import (
    collection_objects,
    left_mutation_step,
    object_label,
    params_from_roots,
    serre_check,
)

params = params_from_roots([1, 0, -1])
E = collection_objects(params, (1, 2))
print("collection:", [object_label(params, obj) for obj in E])

step = left_mutation_step(params, E[2], E[3])
print("\none step: mutating E4 across E3 gives", object_label(params, step))

result = serre_check(params, (1, 2), 4)
print("\nfull chain for E4 (mutation results after each step):")
for k, obj in enumerate(result.chain):
    print(f"  L^{k} =", object_label(params, obj))
print("T^3 of the final step:", object_label(params, result.result))
print("tau^(mu-1) E4        :", object_label(params, result.expected))
print("verdict:", result.verdict.status)

# mu = 3 behaves the same way, with three stalls in the middle of the chain
params3 = params_from_roots([3, 1, -1, -3])
result3 = serre_check(params3, (1, 2, 3), 6)
print("\nmu = 3, E6 chain:", [object_label(params3, obj) for obj in result3.chain])
print("verdict:", result3.verdict.status)
