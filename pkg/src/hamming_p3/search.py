"""Exhaustive searches on small instances.

The searches carry their own closure routine (in-place sweeps over a CSR
adjacency, not the work-queue engine), so they act as an independent check of
the main engine; every witness is re-verified through :func:`analyze`
before it is reported.

Subsets of each size are enumerated in colexicographic order of their rank
tuples. Carathéodory-ness is not monotone under adding vertices, so no subset
pruning is applied; the only reductions are symmetry canonicalization and the
budget cut-offs.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from numba import njit

from .constructions import ConstructionFamily, verify_family
from .convexity import analyze
from .errors import InputError, PreconditionError, Unsupported
from .hamming import RadixVector, VertexSet
from .hull import ORACLE_LIMIT, AdjacencyGraph

CARATHEODORY = 0
MINIMAL_HULL = 1

_CHUNK = 4096
_GROUP_LIMIT = 50_000_000  # entries of the permutation table


# -- kernels ----------------------------------------------------------------


@njit(cache=True, nogil=True)
def _closure(indptr, indices, members, skip, out):
    """Closure of ``members`` minus position ``skip`` (-1: keep all), in place."""
    out[:] = False
    for j in range(members.size):
        if j != skip:
            out[members[j]] = True
    size = out.size
    changed = True
    while changed:
        changed = False
        for v in range(size):
            if out[v]:
                continue
            hits = 0
            for p in range(indptr[v], indptr[v + 1]):
                if out[indices[p]]:
                    hits += 1
                    if hits == 2:
                        break
            if hits == 2:
                out[v] = True
                changed = True


@njit(cache=True, nogil=True)
def _qualifies(indptr, indices, members, mode, full, part, covered):
    _closure(indptr, indices, members, -1, full)
    size = full.size
    if mode == 1:
        for v in range(size):
            if not full[v]:
                return False
        for j in range(members.size):
            _closure(indptr, indices, members, j, part)
            spans = True
            for v in range(size):
                if not part[v]:
                    spans = False
                    break
            if spans:
                return False
        return True
    covered[:] = False
    for j in range(members.size):
        _closure(indptr, indices, members, j, part)
        for v in range(size):
            if part[v]:
                covered[v] = True
        left = False
        for v in range(size):
            if full[v] and not covered[v]:
                left = True
                break
        if not left:
            return False
    return True


@njit(cache=True, nogil=True)
def _is_canonical(members, perms, image):
    k = members.size
    for g in range(perms.shape[0]):
        for j in range(k):
            image[j] = perms[g, members[j]]
        image[:k].sort()
        for j in range(k):
            if image[j] < members[j]:
                return False
            if image[j] > members[j]:
                break
    return True


@njit(cache=True, nogil=True)
def _scan(indptr, indices, pool, prefix, k, binom, start, count, mode, perms):
    """Scan ``count`` candidates of colex rank ``start..``; each candidate is
    ``prefix`` plus ``k`` pool entries. Returns the offset of the first
    qualifying candidate, or -1."""
    m = pool.size
    combo = np.empty(k, np.int64)
    rank = start
    for i in range(k - 1, -1, -1):
        c = i
        while c + 1 < m and binom[c + 1, i + 1] <= rank:
            c += 1
        combo[i] = c
        rank -= binom[c, i + 1]
    members = np.empty(prefix.size + k, np.int64)
    image = np.empty(prefix.size + k, np.int64)
    full = np.zeros(indptr.size - 1, np.bool_)
    part = np.zeros(indptr.size - 1, np.bool_)
    covered = np.zeros(indptr.size - 1, np.bool_)
    for t in range(count):
        for j in range(prefix.size):
            members[j] = prefix[j]
        for j in range(k):
            members[prefix.size + j] = pool[combo[j]]
        if perms.shape[0] == 0 or _is_canonical(members, perms, image):
            if _qualifies(indptr, indices, members, mode, full, part, covered):
                return t
        # colex successor
        j = 0
        while j < k:
            limit = combo[j + 1] if j + 1 < k else m
            if combo[j] + 1 < limit:
                break
            j += 1
        if j == k:
            break
        combo[j] += 1
        for i in range(j):
            combo[i] = i
    return -1


# -- budget and results ----------------------------------------------------


@dataclass
class SearchBudget:
    """Limits for one search. ``None`` means unlimited (subset size: up to the
    universe). ``canonicalize``: 0 none, 1 fix the all-zeros vertex (translation),
    2 additionally reduce by coordinate and symbol permutations."""

    max_subset_size: int | None = None
    max_candidates: int | None = None
    time_limit: float | None = None
    canonicalize: int = 0
    threads: int = 1

    def __post_init__(self):
        for name in ("max_subset_size", "max_candidates", "time_limit"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise InputError(f"{name} must be positive")
        if self.canonicalize not in (0, 1, 2):
            raise InputError("canonicalize must be 0, 1 or 2")
        if self.threads < 1:
            raise InputError("threads must be >= 1")


@dataclass
class SearchResult:
    kind: str
    best_size: int
    witness: list | None
    exhaustive: bool
    candidates_examined: int
    max_size_searched: int
    universe_size: int
    sizes_found: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def complete(self) -> bool:
        """Exhaustive over every subset size, not just up to the size bound."""
        return self.exhaustive and self.max_size_searched >= self.universe_size

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(asdict(self), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "SearchResult":
        return cls(**json.loads(text))


# -- driver -----------------------------------------------------------------


def _binomials(m: int, k: int) -> np.ndarray:
    cap = 2**62
    table = np.zeros((m + 1, k + 2), dtype=np.int64)
    table[:, 0] = 1
    for c in range(1, m + 1):
        row = table[c - 1, 1:] + table[c - 1, :-1]
        table[c, 1:] = np.minimum(row, cap)
    return table


def hamming_automorphisms(rv: RadixVector) -> np.ndarray:
    """Rank permutations for symbol permutations per coordinate combined with
    permutations of coordinates of equal radix. Shape ``(group_size, N)``."""
    n = rv.dimension
    coords = rv.decode_many(np.arange(rv.universe_size))
    coord_perms = [p for p in itertools.permutations(range(n))
                   if all(rv.radices[p[i]] == rv.radices[i] for i in range(n))]
    symbol_choices = [list(itertools.permutations(range(r))) for r in rv.radices]
    group = len(coord_perms) * math.prod(len(c) for c in symbol_choices)
    if group * rv.universe_size > _GROUP_LIMIT:
        raise Unsupported(f"automorphism table of {group} x {rv.universe_size} is too large")
    strides = np.array(rv.strides)
    rows = []
    for sigma in coord_perms:
        for pis in itertools.product(*symbol_choices):
            image = np.empty_like(coords)
            for i in range(n):
                image[:, sigma[i]] = np.asarray(pis[i])[coords[:, i]]
            rows.append(image @ strides)
    return np.array(rows, dtype=np.int64)


def _as_graph(provider) -> AdjacencyGraph:
    if provider.universe_size > ORACLE_LIMIT:
        raise Unsupported(f"search refuses universes above {ORACLE_LIMIT} vertices")
    if isinstance(provider, AdjacencyGraph):
        return provider
    return AdjacencyGraph.from_provider(provider)


def _search(provider, budget: SearchBudget, mode: int) -> SearchResult:
    started = time.perf_counter()
    deadline = None if budget.time_limit is None else started + budget.time_limit
    graph = _as_graph(provider)
    n_vertices = graph.universe_size
    if budget.canonicalize and not isinstance(provider, RadixVector):
        raise Unsupported("canonicalization needs a Hamming graph (vertex-transitive provider)")
    if budget.canonicalize:
        prefix = np.array([0], dtype=np.int64)
        pool = np.arange(1, n_vertices, dtype=np.int64)
    else:
        prefix = np.empty(0, dtype=np.int64)
        pool = np.arange(n_vertices, dtype=np.int64)
    perms = (hamming_automorphisms(provider) if budget.canonicalize == 2
             else np.empty((0, max(n_vertices, 1)), dtype=np.int64))
    max_size = n_vertices if budget.max_subset_size is None else min(budget.max_subset_size,
                                                                     n_vertices)
    remaining = budget.max_candidates
    examined = 0
    best, witness = 0, None
    sizes_found = []
    exhaustive = True
    searched = 0
    pool_threads = ThreadPoolExecutor(budget.threads) if budget.threads > 1 else None
    try:
        for size in range(1, max_size + 1):
            k = size - prefix.size
            if k < 0:
                continue
            total = math.comb(pool.size, k)
            binom = _binomials(pool.size, k)
            offset = 0
            hit = -1
            while offset < total:
                if deadline is not None and time.perf_counter() > deadline:
                    break
                if remaining is not None and remaining <= 0:
                    break
                chunks = []
                start = offset
                for _ in range(budget.threads):
                    if start >= total:
                        break
                    span = min(_CHUNK, total - start)
                    if remaining is not None:
                        span = min(span, remaining - (start - offset))
                        if span <= 0:
                            break
                    chunks.append((start, span))
                    start += span
                args = (graph.indptr, graph.indices, pool, prefix, k, binom)
                if pool_threads is not None and len(chunks) > 1:
                    hits = list(pool_threads.map(
                        lambda c: _scan(*args, c[0], c[1], mode, perms), chunks))
                else:
                    hits = [_scan(*args, c[0], c[1], mode, perms) for c in chunks]
                for (c_start, c_span), h in zip(chunks, hits):
                    if h >= 0:
                        hit = c_start + h
                        break
                consumed = (hit + 1 - offset) if hit >= 0 else sum(s for _, s in chunks)
                examined += consumed
                if remaining is not None:
                    remaining -= consumed
                if hit >= 0:
                    break
                offset = start
            if hit < 0 and offset < total:
                exhaustive = False
                break
            searched = size
            if hit >= 0:
                best = size
                sizes_found.append(size)
                witness = _unrank_members(pool, prefix, k, hit)
    finally:
        if pool_threads is not None:
            pool_threads.shutdown()

    kind = "caratheodory" if mode == CARATHEODORY else "minimal_hull_set"
    if witness is not None:
        _reverify(provider, witness, mode)
    shown = witness
    if witness is not None and isinstance(provider, RadixVector):
        shown = [list(provider.decode(r)) for r in witness]
    return SearchResult(
        kind=kind,
        best_size=best,
        witness=shown,
        exhaustive=exhaustive and searched == max_size,
        candidates_examined=examined,
        max_size_searched=searched,
        universe_size=n_vertices,
        sizes_found=sizes_found,
        elapsed_ms=round((time.perf_counter() - started) * 1000, 3),
    )


def _unrank_members(pool, prefix, k, rank) -> list:
    combo = []
    for i in range(k - 1, -1, -1):
        c = i
        while c + 1 < pool.size and math.comb(c + 1, i + 1) <= rank:
            c += 1
        combo.append(c)
        rank -= math.comb(c, i + 1)
    return [int(r) for r in prefix] + [int(pool[c]) for c in sorted(combo)]


def _reverify(provider, ranks, mode):
    report = analyze(provider, VertexSet.from_ranks(provider.universe_size, ranks),
                     keep_removal_hulls=False)
    ok = report.is_caratheodory if mode == CARATHEODORY else report.is_minimal_hull_set
    if not ok:
        raise AssertionError(f"search witness {ranks} failed re-verification")


def max_caratheodory(provider, budget: SearchBudget | None = None) -> SearchResult:
    """Largest Carathéodory set, by increasing subset size."""
    return _search(provider, budget or SearchBudget(), CARATHEODORY)


def max_minimal_hull_set(provider, budget: SearchBudget | None = None) -> SearchResult:
    """Largest minimal hull set (``H(S) = V`` and no ``S - u`` spans ``V``)."""
    return _search(provider, budget or SearchBudget(), MINIMAL_HULL)


# -- base-list repair ------------------------------------------------------


@dataclass
class Repair:
    side: str
    index: int
    original: tuple
    replacement: tuple
    distance: int
    # not serialized; rebuild with family.replace() when needed
    family: ConstructionFamily | None = field(default=None, repr=False, compare=False)


@dataclass
class RepairResult:
    repairs: list
    exhaustive: bool
    candidates_examined: int
    flagged: list
    elapsed_ms: float = 0.0

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps({
            "repairs": [{"side": r.side, "index": r.index, "original": list(r.original),
                         "replacement": list(r.replacement), "distance": r.distance}
                        for r in self.repairs],
            "exhaustive": self.exhaustive,
            "candidates_examined": self.candidates_examined,
            "flagged": [list(f) for f in self.flagged],
            "elapsed_ms": self.elapsed_ms,
        }, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "RepairResult":
        data = json.loads(text)
        repairs = [Repair(r["side"], r["index"], tuple(r["original"]), tuple(r["replacement"]),
                          r["distance"]) for r in data["repairs"]]
        return cls(repairs, data["exhaustive"], data["candidates_examined"],
                   [tuple(f) for f in data["flagged"]], data["elapsed_ms"])


def _flag_positions(family: ConstructionFamily, failed: list) -> list:
    flagged = []
    for side, members in (("w", family.s_w), ("v", family.s_v)):
        seen = set()
        for i, x in enumerate(members):
            if x in seen or (side == "v" and x in family.s_w):
                flagged.append((side, i))
            seen.add(x)
    if flagged:
        return flagged
    w_bad = any(name.startswith("s_w") for name in failed)
    v_bad = any(name.startswith("s_v") for name in failed)
    if not (w_bad or v_bad):
        w_bad = v_bad = True
    if w_bad:
        flagged += [("w", i) for i in range(len(family.s_w))]
    if v_bad:
        flagged += [("v", i) for i in range(len(family.s_v))]
    return flagged


def _at_distance(vertex: tuple, d: int, alphabet=(0, 1, 2)):
    for positions in itertools.combinations(range(len(vertex)), d):
        choices = [[a for a in alphabet if a != vertex[p]] for p in positions]
        for values in itertools.product(*choices):
            out = list(vertex)
            for p, a in zip(positions, values):
                out[p] = a
            yield tuple(out)


def repair_base_list(n: int, family: ConstructionFamily, budget: SearchBudget | None = None,
                     max_distance: int = 3, flagged: list | None = None,
                     rv: RadixVector | None = None) -> RepairResult:
    """Single-vertex substitutions that make a failing family verify.

    The flagged vertex (duplicates first; otherwise every vertex on the side
    whose sub-checks failed) is replaced by tuples over {0, 1, 2} in order of
    Hamming distance from the original vertex, up to ``max_distance``. Every
    passing substitution within the budget is returned, nearest first.
    """
    budget = budget or SearchBudget()
    started = time.perf_counter()
    if family.n != n:
        raise InputError(f"family is for n = {family.n}, not {n}")
    base = verify_family(family, rv)
    if base.passed:
        raise PreconditionError("family already verifies; nothing to repair")
    if flagged is None:
        flagged = _flag_positions(family, base.failed_checks)
    deadline = None if budget.time_limit is None else started + budget.time_limit
    repairs, examined = [], 0
    exhaustive = True
    for d in range(1, max_distance + 1):
        for side, index in flagged:
            original = (family.s_w if side == "w" else family.s_v)[index]
            for candidate in _at_distance(original, d):
                if (budget.max_candidates is not None and examined >= budget.max_candidates) or (
                        deadline is not None and time.perf_counter() > deadline):
                    exhaustive = False
                    break
                examined += 1
                trial = family.replace(side, index, candidate, "repaired")
                if verify_family(trial, rv).passed:
                    repairs.append(Repair(side, index, original, candidate, d, trial))
            if not exhaustive:
                break
        if not exhaustive:
            break
    return RepairResult(repairs, exhaustive, examined, list(flagged),
                        round((time.perf_counter() - started) * 1000, 3))


# -- K2 exploration ------------------------------------------------------------


@dataclass
class K2Exploration:
    radices: list
    caratheodory: SearchResult
    minimal_hull: SearchResult
    c_less_than_p: bool
    conclusive: bool

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(asdict(self), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "K2Exploration":
        data = json.loads(text)
        return cls(data["radices"], SearchResult(**data["caratheodory"]),
                   SearchResult(**data["minimal_hull"]), data["c_less_than_p"], data["conclusive"])


def explore_k2_conjecture(rv: RadixVector, budget: SearchBudget | None = None) -> K2Exploration:
    """Run both searches on a Hamming graph with at least one factor K2 and
    compare the best sizes. ``conclusive`` is False unless both searches
    covered every subset size."""
    if 2 not in rv.radices:
        raise PreconditionError("explore_k2_conjecture needs at least one factor of size 2")
    budget = budget or SearchBudget(max_subset_size=6)
    c = max_caratheodory(rv, budget)
    p = max_minimal_hull_set(rv, budget)
    return K2Exploration(list(rv.radices), c, p, c.best_size < p.best_size,
                         c.complete and p.complete)
