"""The length-2mu collections and their verification.

For an order a = (a_1, ..., a_mu) of distinct root indices, the collection
is E_k = F_{I_k} for k <= mu and E_k = tau F_{I_{k-mu}} afterwards, with
I_k = {a_1, ..., a_k}.  The report checks that each object is exceptional,
that all backwards morphism spaces vanish for every power of the shift, and
that forward spaces vanish away from power zero; the Gram matrix collects
the alternating sums of dimensions.
"""

from itertools import permutations

from gradedmf import check_collection, collection_objects, params_from_roots

params = params_from_roots([1, 0, -1])
objects = collection_objects(params, (1, 2))
report = check_collection(params, objects, order=(1, 2))

print("objects:", report.labels)
print("each exceptional:", report.each_exceptional)
print("exceptional collection:", report.is_exceptional_collection)
print("strongly exceptional:  ", report.is_strong)
print("Gram matrix:")
for row in report.gram:
    print("  ", row)

print("\nevery order works:")
for order in permutations((1, 2, 3), 2):
    rep = check_collection(params, collection_objects(params, order), order=order)
    print(f"  a={order}: exceptional={rep.is_exceptional_collection} strong={rep.is_strong}")

print("\nreversing the collection breaks the one-way vanishing:")
reversed_report = check_collection(params, list(reversed(objects)))
print("  exceptional:", reversed_report.is_exceptional_collection)
print("  first failure:", reversed_report.failures[0])
