from gradedmf.collections import (
    check_collection,
    collection_objects,
    is_exceptional,
    iso_equivalent,
    left_mutation_step,
    object_label,
    serre_check,
    t_power_dims,
    verify_generation,
)
from gradedmf.mf import direct_sum, reduce_mf, shift_power, tau_shift, zero_mf
from gradedmf.rank_one import build_f_I, build_phi, residue_field_stab
from gradedmf.mf import cone
from conftest import proper_subsets


def test_every_rank_one_object_is_exceptional(p2):
    for I in proper_subsets(p2):
        verdict = is_exceptional(p2, build_f_I(p2, I))
        assert verdict.is_exceptional, (I, verdict.offending)


def test_non_exceptional_cases(p2):
    F = build_f_I(p2, {1})
    assert not is_exceptional(p2, direct_sum(F, F)).is_exceptional
    assert not is_exceptional(p2, zero_mf(p2.h, p2.f)).is_exceptional


def test_collection_mu2(p2):
    objects = collection_objects(p2, (1, 2))
    assert [object_label(p2, E) for E in objects] == [
        "F{1}", "F{1,2}", "tau^1 F{1}", "tau^1 F{1,2}",
    ]
    report = check_collection(p2, objects, order=(1, 2))
    assert report.is_exceptional_collection and report.is_strong
    assert report.gram == [
        [1, 1, 1, 0],
        [0, 1, 1, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 1],
    ]
    # unit diagonal and triangularity are exactly the exceptional structure
    for i in range(4):
        assert report.gram[i][i] == 1
        for j in range(i):
            assert report.gram[i][j] == 0


def test_collection_mu1(p1):
    report = check_collection(p1, collection_objects(p1, (1,)), order=(1,))
    assert report.verified
    assert report.gram == [[1, 0], [0, 1]]


def test_reversed_collection_fails(p2):
    objects = list(reversed(collection_objects(p2, (1, 2))))
    report = check_collection(p2, objects)
    assert not report.is_exceptional_collection
    assert report.failures


def test_t_power_dims(p2):
    F1 = build_f_I(p2, {1})
    F12 = build_f_I(p2, {1, 2})
    assert t_power_dims(p2, F1, F12) == {0: 1}
    assert t_power_dims(p2, F12, F1) == {}
    assert t_power_dims(p2, F1, F1) == {0: 1}


def test_left_mutation_examples(p2):
    E = collection_objects(p2, (1, 2))
    # mutating the last object across its predecessor lands on F{1,3}
    L1 = left_mutation_step(p2, E[2], E[3])
    assert object_label(p2, L1) == "F{1,3}"
    # empty morphism table: the step contributes one inverse shift
    stall = left_mutation_step(p2, E[2], E[0])
    expected, _ = reduce_mf(shift_power(E[0], -1))
    assert iso_equivalent(p2, stall, expected).status == "iso"
    # mutating an exceptional object across itself kills it
    assert left_mutation_step(p2, E[0], E[0]).rank == 0


def test_iso_equivalent_tiers(p2):
    F1 = build_f_I(p2, {1})
    F2 = build_f_I(p2, {2})
    assert iso_equivalent(p2, F1, F2).status == "no"
    assert iso_equivalent(p2, F1, tau_shift(F1, 1)).status == "no"
    assert iso_equivalent(p2, F1, F1).status == "iso"
    C, _ = reduce_mf(cone(build_phi(p2, {1}, {1, 2})))
    assert iso_equivalent(p2, C, tau_shift(build_f_I(p2, {2}), 1)).status == "iso"
    # the zero object is isomorphic to any contractible cone
    from gradedmf.mf import identity_morphism

    K = cone(identity_morphism(F1))
    assert iso_equivalent(p2, K, zero_mf(p2.h, p2.f)).status == "iso"


def test_iso_equivalent_rank2_certificate(p2):
    rfs = residue_field_stab(p2, 1)
    verdict = iso_equivalent(p2, rfs.stab, rfs.comparison)
    assert verdict.status == "iso"
    assert verdict.forward is not None and verdict.backward is not None
    # distinct rank-two objects with equal twists: a sum is not the stab
    other = direct_sum(
        build_f_I(p2, {1}, 0), tau_shift(build_f_I(p2, {1}), 1)
    )
    assert iso_equivalent(p2, rfs.stab, other).status == "no"


def test_serre_mu1(p1):
    result = serre_check(p1, (1,), 2)
    assert result.holds
    # mu = 1: the comparison shift is tau^0
    assert result.expected == collection_objects(p1, (1,))[1]


def test_serre_mu2_last_object_with_chain(p2):
    result = serre_check(p2, (1, 2), 4)
    assert result.holds
    chain = result.chain
    assert iso_equivalent(p2, chain[1], build_f_I(p2, {1, 3})).status == "iso"
    stall, _ = reduce_mf(shift_power(build_f_I(p2, {1, 3}), -1))
    assert iso_equivalent(p2, chain[2], stall).status == "iso"
    final_expected, _ = reduce_mf(
        shift_power(tau_shift(build_f_I(p2, {1, 2}), -1), -1)
    )
    assert iso_equivalent(p2, chain[3], final_expected).status == "iso"


def test_serre_chain_annihilates_non_final_objects(p2):
    # mutating E_i across E_i itself cones off an isomorphism, so the
    # plain chain yields zero for every non-final object
    for i in (1, 2, 3):
        result = serre_check(p2, (1, 2), i)
        assert result.result.rank == 0
        assert not result.holds


def test_generation_mu2_all_orders(p2):
    for order in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]:
        report = verify_generation(p2, order)
        assert report.all_passed, [
            (l.line_id, l.detail) for l in report.lines if not l.passed
        ]


def test_generation_mu1(p1):
    report = verify_generation(p1, (1,))
    assert report.all_passed


def test_generation_report_json(p2):
    report = verify_generation(p2, (1, 2))
    data = report.to_json()
    assert data["all_passed"] is True
    assert len(data["lines"]) == len(report.lines)
    ids = [line["id"] for line in data["lines"]]
    assert "residue.iso.i1" in ids
