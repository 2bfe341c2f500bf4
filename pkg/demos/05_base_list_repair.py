"""Find a single-vertex substitution that repairs the n = 8 base list.

Run: python demos/05_base_list_repair.py
"""

from hamming_p3 import build_family, repair_base_list, verify_family

family = build_family(8)
print("v_3 and v_4 of the base list:", family.s_v[2], family.s_v[3])
print("distinct vertices in U:", len(family.distinct_u), "of", family.expected_size)

before = verify_family(family)
print("verbatim checks failing:", before.failed_checks)

result = repair_base_list(8, family)
print(f"searched {result.candidates_examined} substitutions (exhaustive {result.exhaustive})")
for r in result.repairs:
    after = verify_family(r.family)
    print(f"  {r.side}_{r.index + 1}: {r.original} -> {r.replacement} "
          f"(distance {r.distance}), passes {after.passed}, |U| = {after.size}")
