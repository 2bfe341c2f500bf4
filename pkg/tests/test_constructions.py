import os

import pytest

from hamming_p3.constructions import (
    FamilyVerification,
    build_family,
    caratheodory_formula,
    lower_bound_set,
    q_sequence,
    small_caratheodory_set,
    verify_family,
)
from hamming_p3.convexity import analyze
from hamming_p3.errors import InputError, Unsupported
from hamming_p3.hamming import RadixVector


@pytest.mark.parametrize("n, expected", [
    (1, 2), (2, 2), (3, 3), (6, 6), (7, 8), (8, 10), (9, 12), (10, 16), (11, 20), (12, 24),
    (15, 48), (16, 64), (17, 80),
])
def test_formula(n, expected):
    assert caratheodory_formula(n) == expected


def test_formula_rejects_zero():
    with pytest.raises(InputError):
        caratheodory_formula(0)


def test_q_sequence_values_and_doubling():
    q = q_sequence(30)
    assert [q.q(n) for n in range(1, 11)] == [2, 2, 3, 4, 5, 6, 8, 10, 12, 16]
    for n in range(7, 31):
        assert q.q(n) == 2 * q.q(n - 3)
        assert q.q(n) == max(2 * q.q(n - 3), q.q(n - 1) + 1)


def test_formula_matches_q_sequence():
    # the upper bound is attained, so the two agree from n = 2 on
    q = q_sequence(40)
    for n in range(2, 41):
        assert caratheodory_formula(n) == q.q(n)


def test_lower_bound_sets():
    assert lower_bound_set(4) == [(0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0)]
    five = lower_bound_set(5)
    assert len(five) == 5 and all(v.count(0) == 1 for v in five)
    with pytest.raises(InputError):
        lower_bound_set(3)
    assert small_caratheodory_set(2) == [(1, 0), (0, 1)]
    assert small_caratheodory_set(3) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_lower_bound_set_is_caratheodory(n):
    rv = RadixVector.uniform(n, 3)
    report = analyze(rv, rv.vertex_set(lower_bound_set(n)))
    assert report.is_caratheodory and report.is_hull_set
    assert 0 in report.boundary


@pytest.mark.parametrize("n", [1, 2, 3])
def test_small_sets_are_caratheodory(n):
    rv = RadixVector.uniform(n, 3)
    report = analyze(rv, rv.vertex_set(small_caratheodory_set(n)))
    assert report.is_caratheodory and len(report.set) == caratheodory_formula(n)


def test_family_shapes():
    nine = build_family(9)
    assert (0,) * 7 in nine.s_w and len(nine.u) == 12
    seven = build_family(7)
    assert len(seven.u) == 8
    assert all(set(v) <= {0, 1, 2} and len(v) == 7 for v in seven.u)
    twelve = build_family(12)
    assert len(twelve.s_w) == len(twelve.s_v) == 12 and len(twelve.u) == 24
    with pytest.raises(InputError):
        build_family(6)


@pytest.mark.parametrize("n", range(7, 19))
@pytest.mark.parametrize("variant", ["verbatim", "repaired"])
def test_family_invariants(n, variant):
    family = build_family(n, variant)
    assert family.expected_size == caratheodory_formula(n) <= q_sequence(n).q(n)
    for v in family.s_w + family.s_v:
        assert len(v) == n - 2 and set(v) <= {0, 1, 2}
    assert all(len(u) == n for u in family.u)


def test_eight_verbatim_has_duplicate():
    family = build_family(8)
    assert family.s_v[2] == family.s_v[3]
    assert len(family.distinct_u) == 9
    repaired = build_family(8, "repaired")
    assert repaired.variant == "repaired" and len(repaired.distinct_u) == 10


def test_variant_label_only_where_it_differs():
    assert build_family(7, "repaired").variant == "verbatim"
    assert build_family(9, "repaired").variant == "verbatim"
    assert build_family(12, "repaired").variant == "repaired"
    assert build_family(12, "repaired").u != build_family(12).u


@pytest.mark.parametrize("n, size", [(7, 8), (9, 12), (10, 16)])
def test_verify_passes(n, size):
    result = verify_family(n)
    assert result.passed, result.failed_checks
    assert result.size == size
    assert result.witness[-2:] == [2, 2]


def test_verify_eight_verbatim_fails():
    result = verify_family(8)
    assert not result.passed
    assert "s_v_hull_is_subproduct" in result.failed_checks
    assert "size_matches_formula" in result.failed_checks


@pytest.mark.parametrize("n", [8, 11])
def test_verify_repaired_variant(n):
    result = verify_family(build_family(n, "repaired"))
    assert result.passed, result.failed_checks


def test_verify_twelve_verbatim_fails_and_repaired_passes():
    verbatim = verify_family(12)
    assert not verbatim.passed
    assert "s_v_minimal" in verbatim.failed_checks
    repaired = verify_family(build_family(12, "repaired"))
    assert repaired.passed and repaired.size == 24


def test_verify_larger_radices():
    result = verify_family(build_family(7), RadixVector((4, 3, 5, 3, 3, 4, 3)))
    assert result.passed, result.failed_checks


def test_verify_rejects_small_radix():
    with pytest.raises(Unsupported):
        verify_family(build_family(7), RadixVector((2,) + (3,) * 6))
    with pytest.raises(InputError):
        verify_family(build_family(7), RadixVector.uniform(8, 3))


def test_verification_json_roundtrip():
    result = verify_family(7)
    again = FamilyVerification.from_json(result.to_json())
    assert again == result


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("RUN_SLOW"), reason="set RUN_SLOW=1 (takes minutes)")
def test_verify_fifteen_repaired():
    rv = RadixVector.uniform(15, 3, guard=None)
    result = verify_family(build_family(15, "repaired"), rv, threads=os.cpu_count() or 1)
    assert result.passed and result.size == 48
