"""Boundary sets, Carathéodory and hull-set predicates, hull decomposition."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ContractViolation, InputError, PreconditionError
from .hamming import FREE, HammingSubgraph, RadixVector, VertexSet, set_distance
from .hull import p3_hull


def _removal_hulls(provider, s: VertexSet, threads: int = 1):
    members = list(s)
    subsets = [s.without(u) for u in members]
    if threads > 1 and len(members) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hulls = list(pool.map(lambda t: p3_hull(provider, t), subsets))
    else:
        hulls = [p3_hull(provider, t) for t in subsets]
    return members, hulls


def boundary(provider, s: VertexSet, threads: int = 1) -> VertexSet:
    """``H(S)`` minus the union of ``H(S - u)`` over ``u`` in ``S``."""
    if not s:
        raise InputError("boundary of the empty set is undefined here")
    hull = p3_hull(provider, s)
    covered = np.zeros(provider.universe_size, dtype=np.bool_)
    for _, h in zip(*_removal_hulls(provider, s, threads)):
        covered |= h._mask
    return VertexSet(provider.universe_size, hull._mask & ~covered)


@dataclass
class CaratheodoryReport:
    set: VertexSet
    hull: VertexSet
    removal_hull_sizes: dict
    boundary: VertexSet
    is_caratheodory: bool
    is_hull_set: bool
    is_minimal_hull_set: bool
    witness: int | None
    # rank -> H(S - {rank}); empty when analyze() was asked not to keep them
    removal_hulls: dict = field(default_factory=dict, repr=False)


def analyze(provider, s: VertexSet, threads: int = 1, keep_removal_hulls: bool = True
            ) -> CaratheodoryReport:
    if not s:
        raise InputError("cannot analyze the empty set")
    hull = p3_hull(provider, s)
    members, hulls = _removal_hulls(provider, s, threads)
    covered = np.zeros(provider.universe_size, dtype=np.bool_)
    for h in hulls:
        covered |= h._mask
    bd = VertexSet(provider.universe_size, hull._mask & ~covered)
    is_hull_set = hull.is_full()
    return CaratheodoryReport(
        set=s.copy(),
        hull=hull,
        removal_hull_sizes={u: len(h) for u, h in zip(members, hulls)},
        boundary=bd,
        is_caratheodory=bool(bd),
        is_hull_set=is_hull_set,
        is_minimal_hull_set=is_hull_set and not any(h.is_full() for h in hulls),
        witness=bd.min_rank(),
        removal_hulls=dict(zip(members, hulls)) if keep_removal_hulls else {},
    )


# -- decomposition --------------------------------------------------------


@dataclass
class Component:
    ranks: np.ndarray = field(repr=False)
    size: int
    is_hamming: bool
    subgraph: HammingSubgraph | None

    @property
    def dimension(self) -> int | None:
        return None if self.subgraph is None else self.subgraph.dimension

    def vertex_set(self, universe_size: int) -> VertexSet:
        return VertexSet.from_ranks(universe_size, self.ranks)


@dataclass
class HullDecomposition:
    components: list

    @property
    def all_hamming(self) -> bool:
        return all(c.is_hamming for c in self.components)

    @property
    def total_size(self) -> int:
        return sum(c.size for c in self.components)

    def __len__(self):
        return len(self.components)


def components_of(rv: RadixVector, h: VertexSet) -> HullDecomposition:
    """Connected components of ``G[h]`` with the Hamming-subgraph test applied.

    A component passes when, for every coordinate, the values it takes are a
    single value or the whole range, and its size is the product of those
    value counts. Does not require ``h`` to be convex.
    """
    if h.universe_size != rv.universe_size:
        raise InputError("set and radix vector disagree on the universe size")
    labels, count = _kernels.label_components_hamming(rv._radix_arr, rv._stride_arr, h._mask)
    if count == 0:
        return HullDecomposition([])
    ranks = h.ranks()
    comp = labels[ranks]
    coords = rv.decode_many(ranks)
    sizes = np.bincount(comp, minlength=count)
    value_counts = np.empty((count, rv.dimension), dtype=np.int64)
    fixed_value = np.empty((count, rv.dimension), dtype=np.int64)
    for i, r in enumerate(rv.radices):
        seen = np.zeros((count, r), dtype=np.bool_)
        seen[comp, coords[:, i]] = True
        value_counts[:, i] = seen.sum(axis=1)
        fixed_value[:, i] = seen.argmax(axis=1)
    radices = np.array(rv.radices)
    shape_ok = ((value_counts == 1) | (value_counts == radices)).all(axis=1)
    size_ok = sizes == np.prod(value_counts, axis=1)
    passes = shape_ok & size_ok
    order = np.argsort(comp, kind="stable")
    bounds = np.searchsorted(comp[order], np.arange(count + 1))
    components = []
    for c in range(count):
        members = ranks[order[bounds[c]:bounds[c + 1]]]
        sub = None
        if passes[c]:
            # a radix-1 coordinate is reported as fixed 0
            pattern = tuple(
                int(fixed_value[c, i]) if value_counts[c, i] == 1 else FREE
                for i in range(rv.dimension)
            )
            sub = HammingSubgraph(pattern, rv.radices)
        components.append(Component(members, int(sizes[c]), bool(passes[c]), sub))
    return HullDecomposition(components)


def decompose(rv: RadixVector, h: VertexSet) -> HullDecomposition:
    """Split a convex set into connected components, each tested for being a
    Hamming subgraph. Raises ContractViolation if ``h`` is not convex."""
    if p3_hull(rv, h) != h:
        raise ContractViolation("decompose needs a P3-convex set")
    return components_of(rv, h)


# -- distance lemmas ------------------------------------------------------


@dataclass
class DistanceLemmaCheck:
    distance: int
    base_dimension: int
    case: str
    expected_dimension: int | None
    observed: list
    holds: bool


def _single_hamming_component(rv, hull, what):
    dec = components_of(rv, hull)
    if len(dec) != 1 or not dec.components[0].is_hamming:
        raise PreconditionError(f"{what} must be a single Hamming subgraph")
    return dec.components[0]


def check_distance_lemma(rv: RadixVector, s: VertexSet, x: Sequence[int]) -> DistanceLemmaCheck:
    """Check the three distance cases for adding ``x`` to a set with connected hull.

    distance 1 -> one component of dimension k+1; distance 2 -> k+2;
    distance > 2 -> the hull is ``H(S)`` plus the isolated vertex ``x``.
    Distance 0 (``x`` already in the hull) is reported as case ``"inside"``.
    """
    hull = p3_hull(rv, s)
    base = _single_hamming_component(rv, hull, "H(S)")
    k = base.dimension
    xr = rv.encode(x)
    single = VertexSet.from_ranks(rv.universe_size, [xr])
    d = set_distance(single, hull, rv)
    grown = s.copy()
    grown.add(xr)
    new_hull = p3_hull(rv, grown)
    dec = components_of(rv, new_hull)
    observed = [(c.subgraph.pattern_strings() if c.subgraph else None, c.dimension, c.size)
                for c in dec.components]
    if d == 0:
        return DistanceLemmaCheck(0, k, "inside", k, observed, new_hull == hull)
    if d <= 2:
        expected = k + d
        holds = len(dec) == 1 and dec.components[0].is_hamming and dec.components[0].dimension == expected
        return DistanceLemmaCheck(d, k, f"dimension k+{d}", expected, observed, holds)
    holds = new_hull == (hull | single)
    return DistanceLemmaCheck(d, k, "disjoint union", None, observed, holds)


@dataclass
class TwoSubgraphCheck:
    distance: int
    dimensions: tuple
    case: str
    bound: int | None
    observed: list
    holds: bool


def check_two_subgraph_lemma(rv: RadixVector, first: HammingSubgraph,
                             second: HammingSubgraph) -> TwoSubgraphCheck:
    """Hull of the union of two disjoint Hamming subgraphs at distance d:
    one Hamming subgraph of dimension <= k+k'+d when d <= 2, otherwise just
    the union."""
    a, b = first.vertex_set(rv), second.vertex_set(rv)
    if not a.isdisjoint(b):
        raise PreconditionError("the two Hamming subgraphs must be disjoint")
    d = set_distance(a, b, rv)
    union = a | b
    hull = p3_hull(rv, union)
    dec = components_of(rv, hull)
    observed = [(c.subgraph.pattern_strings() if c.subgraph else None, c.dimension, c.size)
                for c in dec.components]
    dims = (first.dimension, second.dimension)
    if d <= 2:
        bound = dims[0] + dims[1] + d
        holds = len(dec) == 1 and dec.components[0].is_hamming and dec.components[0].dimension <= bound
        return TwoSubgraphCheck(d, dims, f"dimension <= k+k'+{d}", bound, observed, holds)
    return TwoSubgraphCheck(d, dims, "disjoint union", None, observed, hull == union)


def hull_dimension_thresholds(rv: RadixVector, s: VertexSet) -> dict:
    """Dimension of a connected hull, compared with n-1 and n-2.

    The lower bound on the hull dimension of a maximum Carathéodory set is
    stated with n-1 in one place and derived as n-2 in another; both are
    reported so instance checks do not assume either.
    """
    hull = p3_hull(rv, s)
    dec = components_of(rv, hull)
    if len(dec) != 1 or not dec.components[0].is_hamming:
        return {"dimension": None, "at_least_n_minus_1": False, "at_least_n_minus_2": False}
    dim = dec.components[0].dimension
    n = rv.dimension
    return {"dimension": dim, "at_least_n_minus_1": dim >= n - 1, "at_least_n_minus_2": dim >= n - 2}


# -- serialization --------------------------------------------------------


@dataclass
class ReportSummary:
    """JSON-facing view of a :class:`CaratheodoryReport`."""

    radices: list | None
    set: list
    hull_size: int
    boundary_size: int
    witness: list | int | None
    is_caratheodory: bool
    is_hull_set: bool
    is_minimal_hull_set: bool
    components: list

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(asdict(self), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ReportSummary":
        return cls(**json.loads(text))


def summarize(report: CaratheodoryReport, provider) -> ReportSummary:
    if isinstance(provider, RadixVector):
        members = [list(v) for v in provider.coords_of(report.set)]
        witness = None if report.witness is None else list(provider.decode(report.witness))
        dec = components_of(provider, report.hull)
        comps = [{"pattern": c.subgraph.pattern_strings() if c.subgraph else None,
                  "dimension": c.dimension, "size": c.size} for c in dec.components]
        radices = list(provider.radices)
    else:
        members = [int(r) for r in report.set]
        witness = report.witness
        comps = [{"pattern": None, "dimension": None, "size": size}
                 for size in _plain_component_sizes(provider, report.hull)]
        radices = None
    return ReportSummary(
        radices=radices,
        set=members,
        hull_size=len(report.hull),
        boundary_size=len(report.boundary),
        witness=witness,
        is_caratheodory=report.is_caratheodory,
        is_hull_set=report.is_hull_set,
        is_minimal_hull_set=report.is_minimal_hull_set,
        components=comps,
    )


def _plain_component_sizes(provider, h: VertexSet) -> list:
    """Component sizes of ``G[h]`` for a non-Hamming provider, ordered by lowest rank."""
    seen = set()
    sizes = []
    for start in h:
        if start in seen:
            continue
        seen.add(start)
        stack, size = [start], 0
        while stack:
            u = stack.pop()
            size += 1
            for v in provider.neighbor_ranks(u):
                if v in h and v not in seen:
                    seen.add(v)
                    stack.append(v)
        sizes.append(size)
    return sizes

