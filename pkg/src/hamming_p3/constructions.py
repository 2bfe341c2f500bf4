"""Explicit Carathéodory-set families, closed formulas and the q-sequence.

The large-dimension families are built from two lists ``S_w`` and ``S_v`` of
vertices in ``H_{n-2}``: ``S_w`` spans the sub-product whose last coordinate is
0, ``S_v`` the one whose first coordinate is 2. The final set lives in ``H_n``:

    U = {(w, 0, 0) : w in S_w}  u  {(v, 1, 1) : v in S_v}

Lists for ``n`` are obtained from those for ``n - 3`` by residue-specific
prefix/suffix rules, starting from hard-coded lists for n = 7, 8, 9.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .convexity import analyze
from .errors import InputError, Unsupported
from .hamming import DEFAULT_GUARD, RadixVector, VertexSet
from .hull import p3_hull


def caratheodory_formula(n: int) -> int:
    """Carathéodory number of ``H_n`` with every factor of size >= 3.

    Dimensions 2..6 give ``n``. Dimension 1 (a single complete graph) gives 2,
    not 1: the small-dimension statement ``c(H_n) = n`` is only meant from
    n = 2 on, since a complete graph of order >= 3 has Carathéodory number 2.
    """
    if n < 1:
        raise InputError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 2
    if n <= 6:
        return n
    residue = n % 3
    if residue == 0:
        return 3 * 2 ** (n // 3 - 1)
    if residue == 1:
        return 4 * 2 ** ((n - 1) // 3 - 1)
    return 5 * 2 ** ((n - 2) // 3 - 1)


@dataclass(frozen=True)
class QSequence:
    """Upper-bound sequence ``q_1..q_N`` for the maximum minimal hull set size."""

    values: tuple

    def q(self, n: int) -> int:
        if not 1 <= n <= len(self.values):
            raise IndexError(f"q_{n} not computed (have q_1..q_{len(self.values)})")
        return self.values[n - 1]

    def __len__(self):
        return len(self.values)


def q_sequence(length: int) -> QSequence:
    """``q_1 = 2``, ``q_k = k`` for 2..6, then ``q_n = max(2 q_{n-3}, q_{n-1} + 1)``."""
    if length < 1:
        raise InputError("length must be >= 1")
    q = [0, 2, 2, 3, 4, 5, 6]  # index 0 unused
    for n in range(7, length + 1):
        value = max(2 * q[n - 3], q[n - 1] + 1)
        # from n = 7 on the doubling branch always wins
        assert value == 2 * q[n - 3], f"q_{n} is not 2 q_{n - 3}"
        q.append(value)
    return QSequence(tuple(q[1:length + 1]))


def lower_bound_set(n: int) -> list[tuple[int, ...]]:
    """The ``n`` vertices with a single 0 (at position i) and 1 elsewhere.

    A Carathéodory hull set of ``H_n`` whenever every factor has >= 2 vertices;
    the all-zeros vertex lies in its boundary.
    """
    if n < 4:
        raise InputError("lower_bound_set needs n >= 4; use small_caratheodory_set for n <= 3")
    return [tuple(0 if j == i else 1 for j in range(n)) for i in range(n)]


def small_caratheodory_set(n: int) -> list[tuple[int, ...]]:
    """Maximum Carathéodory sets for dimensions 1..3 (sizes 2, 2, 3)."""
    sets = {
        1: [(0,), (1,)],
        2: [(1, 0), (0, 1)],
        3: [(0, 1, 1), (1, 0, 1), (1, 1, 0)],
    }
    if n not in sets:
        raise InputError("small_caratheodory_set covers n = 1, 2, 3")
    return list(sets[n])


# -- base lists ------------------------------------------------------------

# n = 9 base (vertices in H_7)
_W9 = (
    (0, 0, 0, 0, 0, 0, 0),  # w_1
    (0, 1, 2, 2, 0, 0, 0),  # w_2
    (0, 1, 1, 1, 0, 0, 0),  # w_3
    (1, 2, 2, 2, 2, 1, 0),  # w_4
    (1, 2, 0, 0, 1, 1, 0),  # w_5
    (1, 2, 1, 1, 1, 1, 0),  # w_6
)
_V9 = (
    (2, 2, 2, 2, 2, 2, 2),  # v_1
    (2, 2, 2, 0, 0, 1, 2),  # v_2
    (2, 2, 2, 1, 1, 1, 2),  # v_3
    (2, 1, 0, 0, 0, 0, 1),  # v_4
    (2, 1, 1, 2, 2, 0, 1),  # v_5
    (2, 1, 1, 1, 1, 0, 1),  # v_6
)

# n = 7 base (vertices in H_5)
_W7 = (
    (0, 0, 0, 0, 0),  # w_1
    (0, 1, 0, 0, 0),  # w_2
    (1, 2, 1, 1, 0),  # w_3
    (1, 2, 2, 1, 0),  # w_4
)
_V7 = (
    (2, 2, 2, 2, 2),  # v_1
    (2, 2, 2, 1, 2),  # v_2
    (2, 1, 1, 0, 1),  # v_3
    (2, 1, 0, 0, 1),  # v_4
)

# n = 8 base (vertices in H_6)
_W8 = (
    (1, 2, 2, 2, 2, 0),  # w_1
    (0, 0, 0, 0, 0, 0),  # w_2
    (0, 0, 1, 0, 0, 0),  # w_3
    (0, 1, 2, 1, 1, 0),  # w_4
    (0, 1, 2, 2, 1, 0),  # w_5
)
_V8 = (
    (2, 2, 2, 2, 2, 1),  # v_1
    (2, 2, 2, 1, 2, 1),  # v_2
    (2, 1, 0, 0, 1, 1),  # v_3
    (2, 1, 0, 0, 1, 1),  # v_4, identical to v_3 in the original list
    (2, 0, 0, 0, 0, 2),  # v_5
)
# replacement for v_4 found by repair_base_list(8) at Hamming distance 1
_V8_REPAIRED_V4 = (2, 1, 1, 0, 1, 1)

_BASES = {
    0: (9, _W9, _V9),
    1: (7, _W7, _V7),
    2: (8, _W8, _V8),
}

VARIANTS = ("verbatim", "repaired")


@dataclass(frozen=True)
class ConstructionFamily:
    n: int
    residue: int
    s_w: tuple
    s_v: tuple
    expected_size: int
    variant: str = "verbatim"

    @property
    def u(self) -> tuple:
        return tuple(w + (0, 0) for w in self.s_w) + tuple(v + (1, 1) for v in self.s_v)

    @property
    def distinct_u(self) -> list:
        """Members of U without repeats, in construction order."""
        return list(dict.fromkeys(self.u))

    def replace(self, side: str, index: int, vertex: tuple, variant: str) -> "ConstructionFamily":
        if side not in ("w", "v"):
            raise InputError("side must be 'w' or 'v'")
        lst = list(self.s_w if side == "w" else self.s_v)
        lst[index] = tuple(vertex)
        if side == "w":
            return ConstructionFamily(self.n, self.residue, tuple(lst), self.s_v,
                                      self.expected_size, variant)
        return ConstructionFamily(self.n, self.residue, self.s_w, tuple(lst),
                                  self.expected_size, variant)


def _step(residue: int, s_w: tuple, s_v: tuple, repaired: bool = False) -> tuple[tuple, tuple]:
    new_w = tuple((0,) + w + (0, 0) for w in s_w) + tuple((1,) + v + (1, 0) for v in s_v)
    if residue == 0 and not repaired:
        # original rule; fails verification from n = 12 on
        new_v = tuple((2,) + w + (0, 2) for w in s_w) + tuple((2, 2) + v + (1,) for v in s_v)
    elif residue == 1:
        new_v = tuple((2,) + v + (2, 2) for v in s_v) + tuple((2,) + w + (1, 1) for w in s_w)
    else:
        # residue 2, and the repaired residue-0 rule
        new_v = tuple((2,) + w + (1, 1) for w in s_w) + tuple((2,) + v + (2, 2) for v in s_v)
    return new_w, new_v


def build_family(n: int, variant: str = "verbatim") -> ConstructionFamily:
    """Carathéodory-set family for ``H_n``, ``n >= 7``.

    ``variant="verbatim"`` uses the original base lists and recursion rules.
    ``variant="repaired"`` differs in two places: for ``n = 2 (mod 3)`` the
    duplicated base vertex ``v_4`` is replaced, and for ``n = 0 (mod 3)`` the
    ``S_v`` recursion uses ``(2, w, 1, 1)`` / ``(2, v, 2, 2)`` (the residue-2
    rule). The original ``(2, w, 0, 2)`` / ``(2, 2, v, 1)`` rule leaves
    the two halves of ``S_v`` at distance 2 after a single removal, so their
    hulls merge again and ``U`` stops being a Carathéodory set.
    Residue 1 is identical in both variants.
    """
    if n < 7:
        raise InputError(f"families start at n = 7, got {n}")
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}")
    residue = n % 3
    base_n, s_w, s_v = _BASES[residue]
    if residue == 2 and variant == "repaired":
        s_v = s_v[:3] + (_V8_REPAIRED_V4,) + s_v[4:]
    repaired = variant == "repaired"
    for _ in range((n - base_n) // 3):
        s_w, s_v = _step(residue, s_w, s_v, repaired)
    differs = residue == 2 or (residue == 0 and n > base_n)
    family = ConstructionFamily(n, residue, s_w, s_v, caratheodory_formula(n),
                                variant if differs else "verbatim")
    assert all(len(x) == n - 2 for x in s_w + s_v)
    assert len(s_w) == len(s_v) == family.expected_size // 2
    return family


# -- verification ----------------------------------------------------------


@dataclass
class FamilyVerification:
    n: int
    variant: str
    radices: list
    size: int
    expected_size: int
    checks: dict
    witness: list | None
    hull_size: int
    boundary_size: int
    timings_ms: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failed_checks(self) -> list:
        return [name for name, ok in self.checks.items() if not ok]

    def to_json(self, indent: int | None = 2) -> str:
        data = asdict(self)
        data["passed"] = self.passed
        return json.dumps(data, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "FamilyVerification":
        data = json.loads(text)
        data.pop("passed", None)
        return cls(**data)


def _side_checks(sub: RadixVector, members: tuple, target: np.ndarray, avoid) -> dict:
    """Hull equals ``target``, no single removal spans it, and every removal
    hull stays off the region flagged by ``avoid(mask)``."""
    ranks = [sub.encode(x) for x in members]
    seed = VertexSet.from_ranks(sub.universe_size, ranks)
    hull = p3_hull(sub, seed)
    spans = bool(np.array_equal(hull.mask, target))
    minimal = True
    avoids = True
    for r in ranks:
        partial = p3_hull(sub, seed.without(r))
        if np.array_equal(partial.mask, target):
            minimal = False
        if avoid(partial.mask):
            avoids = False
    return {"hull": spans, "minimal": minimal, "avoid": avoids}


def verify_family(family: ConstructionFamily | int, rv: RadixVector | None = None,
                  threads: int = 1, guard: int | None = DEFAULT_GUARD) -> FamilyVerification:
    """Mechanically check a family: U is a Carathéodory hull set of the right
    size with a boundary vertex ending in (2, 2), and both halves behave as
    minimal hull sets of their sub-products with the avoidance properties."""
    if isinstance(family, int):
        family = build_family(family)
    n = family.n
    if rv is None:
        rv = RadixVector.uniform(n, 3, guard=guard)
    if rv.dimension != n:
        raise InputError(f"radix vector has dimension {rv.dimension}, family needs {n}")
    if min(rv.radices) < 3:
        raise Unsupported("family verification needs every factor to have >= 3 vertices")

    timings = {}
    checks = {}
    t0 = time.perf_counter()
    sub = RadixVector(rv.radices[:-2], guard=None)
    top = sub.strides[0]
    last = sub.radices[-1]
    w_target = np.zeros(sub.universe_size, dtype=np.bool_)
    w_target[::last] = True
    v_target = np.zeros(sub.universe_size, dtype=np.bool_)
    v_target[2 * top:3 * top] = True
    w = _side_checks(sub, family.s_w, w_target, lambda m: m[2 * top:3 * top].any())
    v = _side_checks(sub, family.s_v, v_target, lambda m: m[::last].any())
    checks.update({
        "s_w_hull_is_subproduct": w["hull"],
        "s_w_minimal": w["minimal"],
        "s_w_removal_avoids_first_coord_2": w["avoid"],
        "s_v_hull_is_subproduct": v["hull"],
        "s_v_minimal": v["minimal"],
        "s_v_removal_avoids_last_coord_0": v["avoid"],
    })
    timings["half_checks"] = round((time.perf_counter() - t0) * 1000, 3)

    t0 = time.perf_counter()
    members = family.distinct_u
    u_set = rv.vertex_set(members)
    report = analyze(rv, u_set, threads=threads, keep_removal_hulls=False)
    timings["analyze_u"] = round((time.perf_counter() - t0) * 1000, 3)
    bd = report.boundary.ranks()
    tail = (bd // rv.strides[-2]) % rv.radices[-2] == 2
    tail &= bd % rv.radices[-1] == 2
    checks.update({
        "u_caratheodory": report.is_caratheodory,
        "u_hull_set": report.is_hull_set,
        "u_minimal_hull_set": report.is_minimal_hull_set,
        "witness_ends_in_2_2": bool(tail.any()),
        "size_matches_formula": len(members) == caratheodory_formula(n),
    })
    witness = list(rv.decode(int(bd[tail][0]))) if tail.any() else None
    return FamilyVerification(
        n=n,
        variant=family.variant,
        radices=list(rv.radices),
        size=len(members),
        expected_size=family.expected_size,
        checks=checks,
        witness=witness,
        hull_size=len(report.hull),
        boundary_size=len(report.boundary),
        timings_ms=timings,
    )
