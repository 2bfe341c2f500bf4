"""P3-hull computation: closure under "two contaminated neighbours infect".

``p3_hull`` is a work-queue closure with per-vertex counters, so each edge is
relaxed at most twice. It runs natively on a :class:`RadixVector` (neighbours
generated on the fly) and on an explicit :class:`AdjacencyGraph`; any other
object with ``universe_size`` and ``neighbor_ranks`` falls back to a pure
Python queue.

``hull_fixed_point_oracle`` is an independent check: synchronous rounds of
sparse matrix-vector counting until nothing changes.
"""

from __future__ import annotations

import contextlib
import contextvars
from collections import deque
from typing import Iterable, Iterator, Protocol, runtime_checkable

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .errors import InputError, Unsupported
from .hamming import RadixVector, VertexSet

ORACLE_LIMIT = 10**5


@runtime_checkable
class NeighborProvider(Protocol):
    universe_size: int

    def neighbor_ranks(self, rank: int) -> Iterable[int]: ...


class AdjacencyGraph:
    """Simple undirected graph on ranks ``0..n-1`` with sorted adjacency lists."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.universe_size = int(n)
        if self.universe_size < 0:
            raise InputError("vertex count must be >= 0")
        adj: list[set[int]] = [set() for _ in range(self.universe_size)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if v in adj[u]:
                raise InputError(f"parallel edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        degrees = np.fromiter((len(a) for a in self.adjacency), dtype=np.int64,
                              count=self.universe_size)
        self.indptr = np.zeros(self.universe_size + 1, dtype=np.int64)
        np.cumsum(degrees, out=self.indptr[1:])
        self.indices = np.fromiter(
            (v for a in self.adjacency for v in a), dtype=np.int64, count=int(degrees.sum())
        )

    @property
    def edge_count(self) -> int:
        return int(self.indptr[-1]) // 2

    def neighbor_ranks(self, rank: int):
        return self.adjacency[int(rank)]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if u < v:
                    yield u, v

    def __repr__(self):
        return f"AdjacencyGraph(n={self.universe_size}, m={self.edge_count})"

    @classmethod
    def complete(cls, r: int) -> "AdjacencyGraph":
        return cls(r, ((u, v) for u in range(r) for v in range(u + 1, r)))

    @classmethod
    def path(cls, n: int) -> "AdjacencyGraph":
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "AdjacencyGraph":
        if n < 3:
            raise InputError("a cycle needs at least 3 vertices")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def from_provider(cls, provider) -> "AdjacencyGraph":
        """Materialise any neighbour provider (e.g. a small Hamming graph)."""
        edges = ((u, v) for u in range(provider.universe_size)
                 for v in provider.neighbor_ranks(u) if u < v)
        return cls(provider.universe_size, edges)

    @classmethod
    def parse(cls, text: str) -> "AdjacencyGraph":
        """Parse the edge-list format: ``n m`` then ``m`` lines ``u v`` (0-based)."""
        rows = [(i, line.split("#", 1)[0].split()) for i, line in enumerate(text.splitlines(), 1)]
        rows = [(i, r) for i, r in rows if r]
        if not rows:
            raise InputError("empty edge list", line=1, column=1)
        lineno, head = rows[0]
        if len(head) != 2:
            raise InputError("header must be 'n m'", line=lineno, column=1)
        try:
            n, m = int(head[0]), int(head[1])
        except ValueError:
            raise InputError("header must hold two integers", line=lineno, column=1)
        if len(rows) - 1 != m:
            raise InputError(f"header announces {m} edges, found {len(rows) - 1}",
                             line=lineno, column=1)
        edges = []
        for lineno, parts in rows[1:]:
            if len(parts) != 2:
                raise InputError("edge line must be 'u v'", line=lineno, column=1)
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise InputError("edge endpoints must be integers", line=lineno, column=1)
        return cls(n, edges)

    def to_text(self) -> str:
        lines = [f"{self.universe_size} {self.edge_count}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"


# -- hull recording (used by acceptance checks) ---------------------------

_recorder: contextvars.ContextVar = contextvars.ContextVar("hull_recorder", default=None)


@contextlib.contextmanager
def record_hulls():
    """Collect ``(provider, hull)`` for every :func:`p3_hull` call in the block."""
    log: list = []
    token = _recorder.set(log)
    try:
        yield log
    finally:
        _recorder.reset(token)


# -- engine ---------------------------------------------------------------


def _check_set(provider, s: VertexSet):
    if s.universe_size != provider.universe_size:
        raise InputError(
            f"set lives in a universe of {s.universe_size}, provider has {provider.universe_size}"
        )


def _python_hull(provider, seed: np.ndarray) -> np.ndarray:
    contaminated = seed.copy()
    count = np.zeros(seed.size, dtype=np.uint8)
    queue = deque(int(r) for r in np.flatnonzero(seed))
    while queue:
        r = queue.popleft()
        for u in provider.neighbor_ranks(r):
            if contaminated[u]:
                continue
            if count[u]:
                contaminated[u] = True
                queue.append(u)
            else:
                count[u] = 1
    return contaminated


def p3_hull(provider: NeighborProvider, s: VertexSet) -> VertexSet:
    """Smallest P3-convex superset of ``s``."""
    _check_set(provider, s)
    if not s:
        result = VertexSet(provider.universe_size)
    else:
        seed = s._mask
        if isinstance(provider, RadixVector):
            mask = _kernels.hull_hamming(provider._radix_arr, provider._stride_arr, seed)
        elif isinstance(provider, AdjacencyGraph):
            mask = _kernels.hull_csr(provider.indptr, provider.indices, seed)
        else:
            mask = _python_hull(provider, seed)
        result = VertexSet(provider.universe_size, mask)
    log = _recorder.get()
    if log is not None:
        log.append((provider, result))
    return result


def is_convex(provider: NeighborProvider, s: VertexSet) -> bool:
    """True iff no vertex outside ``s`` has two neighbours inside it."""
    return p3_hull(provider, s) == s


def hull_of(provider: NeighborProvider, ranks: Iterable[int]) -> VertexSet:
    return p3_hull(provider, VertexSet.from_ranks(provider.universe_size, ranks))


# -- independent oracle ---------------------------------------------------


def adjacency_matrix(provider: NeighborProvider) -> sp.csr_matrix:
    """Sparse 0/1 adjacency built from ``neighbor_ranks`` alone."""
    n = provider.universe_size
    rows, cols = [], []
    for u in range(n):
        for v in provider.neighbor_ranks(u):
            rows.append(u)
            cols.append(int(v))
    data = np.ones(len(rows), dtype=np.int32)
    return sp.csr_matrix((data, (rows, cols)), shape=(n, n))


_matrix_cache: dict = {}


def hull_fixed_point_oracle(provider: NeighborProvider, s: VertexSet) -> VertexSet:
    """Hull by repeated full scans: add every vertex with >= 2 contaminated
    neighbours until a scan changes nothing. Limited to 10**5 vertices."""
    n = provider.universe_size
    if n > ORACLE_LIMIT:
        raise Unsupported(f"oracle refuses universes above {ORACLE_LIMIT} vertices (got {n})")
    _check_set(provider, s)
    key = id(provider)
    cached = _matrix_cache.get(key)
    if cached is None or cached[0] is not provider:
        if len(_matrix_cache) > 64:
            _matrix_cache.clear()
        cached = (provider, adjacency_matrix(provider))
        _matrix_cache[key] = cached
    matrix = cached[1]
    current = s._mask.copy()
    while True:
        counts = matrix @ current.astype(np.int32)
        grown = current | (counts >= 2)
        if np.array_equal(grown, current):
            return VertexSet(n, current)
        current = grown
