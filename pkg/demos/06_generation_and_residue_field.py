"""Generation replay: the triangles behind fullness, re-run as cones.

The collection generates every shifted rank-one object and the stabilized
residue field.  Each triangle in that argument asserts that a specific cone
reduces to a specific rank-one normal form; this script replays all of them
and prints the verdict lines, then inspects the residue-field comparison.
"""

from gradedmf import (
    iso_equivalent,
    mf_to_json,
    params_from_roots,
    residue_field_stab,
    verify_generation,
)

params = params_from_roots([1, 0, -1])
report = verify_generation(params, (1, 2))
print(f"{len(report.lines)} lines, all passed: {report.all_passed}\n")
for line in report.lines:
    mark = "ok " if line.passed else "FAIL"
    print(f"  [{mark}] {line.line_id:24s} {line.description}")

# The residue-field block: S/(x, q) stabilized via the split f = x*h1 + q*h2,
# against T^-1 tau^(h-2) of the cone of multiplication by q on F_{i}.
rfs = residue_field_stab(params, 1)
print("\nstabilized residue field:")
print(mf_to_json(rfs.stab))
print("cone of (q, q) has the expected block form:", rfs.cone_matches_expected_form)
verdict = iso_equivalent(params, rfs.stab, rfs.comparison)
print("comparison object is isomorphic:", verdict.status)
