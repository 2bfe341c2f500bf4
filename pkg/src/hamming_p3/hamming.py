"""Hamming-graph universe: mixed-radix vertex encoding, adjacency and vertex sets.

A Hamming graph ``K_{r_1} x ... x K_{r_n}`` has as vertices all tuples with
coordinate ``i`` in ``range(r_i)``; two tuples are adjacent when they differ in
exactly one coordinate. Vertices are identified with their mixed-radix rank,
coordinate 0 being the most significant digit, so a block of fixed leading
coordinates maps to a contiguous rank range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import GuardExceeded, InputError

DEFAULT_GUARD = 2**26
_RANK_LIMIT = 2**63

FREE = None


class RadixVector:
    """Factor sizes ``(r_1, ..., r_n)`` of a Hamming graph.

    ``guard`` caps the universe size (``None`` disables the cap). Universes
    beyond ``2**63`` vertices are rejected regardless, since ranks are 64-bit.

    A RadixVector is also a neighbour provider for the hull engine: it exposes
    ``universe_size`` and ``neighbor_ranks``.
    """

    __slots__ = ("radices", "strides", "universe_size", "_radix_arr", "_stride_arr")

    def __init__(self, radices: Iterable[int], guard: int | None = DEFAULT_GUARD):
        radices = tuple(int(r) for r in radices)
        if not radices:
            raise InputError("a Hamming graph needs dimension >= 1")
        if any(r < 1 for r in radices):
            raise InputError(f"every radix must be >= 1, got {radices}")
        size = math.prod(radices)
        if size > _RANK_LIMIT:
            raise InputError(f"universe of {size} vertices does not fit 64-bit ranks")
        if guard is not None and size > guard:
            raise GuardExceeded(
                f"universe of {size} vertices exceeds the guard of {guard}; "
                "raise or disable the guard to proceed"
            )
        strides = []
        acc = 1
        for r in reversed(radices):
            strides.append(acc)
            acc *= r
        self.radices = radices
        self.strides = tuple(reversed(strides))
        self.universe_size = size
        self._radix_arr = np.array(radices, dtype=np.int64)
        self._stride_arr = np.array(self.strides, dtype=np.int64)

    @classmethod
    def uniform(cls, n: int, r: int, guard: int | None = DEFAULT_GUARD) -> "RadixVector":
        return cls((r,) * n, guard=guard)

    @property
    def dimension(self) -> int:
        return len(self.radices)

    @property
    def degree(self) -> int:
        return sum(r - 1 for r in self.radices)

    def __len__(self):
        return len(self.radices)

    def __eq__(self, other):
        return isinstance(other, RadixVector) and self.radices == other.radices

    def __hash__(self):
        return hash(("RadixVector", self.radices))

    def __repr__(self):
        return f"RadixVector({self.radices})"

    # -- encoding ---------------------------------------------------------

    def validate(self, coords: Sequence[int]) -> tuple[int, ...]:
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.radices):
            raise InputError(
                f"vertex {coords} has {len(coords)} coordinates, expected {len(self.radices)}"
            )
        for i, (c, r) in enumerate(zip(coords, self.radices)):
            if not 0 <= c < r:
                raise InputError(f"coordinate {i + 1} of {coords} is outside [0, {r})")
        return coords

    def encode(self, coords: Sequence[int]) -> int:
        coords = self.validate(coords)
        return sum(c * s for c, s in zip(coords, self.strides))

    def decode(self, rank: int) -> tuple[int, ...]:
        rank = int(rank)
        if not 0 <= rank < self.universe_size:
            raise InputError(f"rank {rank} is outside [0, {self.universe_size})")
        out = []
        for r in reversed(self.radices):
            rank, d = divmod(rank, r)
            out.append(d)
        return tuple(reversed(out))

    def encode_many(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, len(self.radices))
        if ((coords < 0) | (coords >= self._radix_arr)).any():
            raise InputError("coordinate out of range")
        return coords @ self._stride_arr

    def decode_many(self, ranks) -> np.ndarray:
        """Return an array of shape ``(len(ranks), n)`` of coordinates."""
        ranks = np.asarray(ranks, dtype=np.int64).reshape(-1, 1)
        return (ranks // self._stride_arr) % self._radix_arr

    # -- adjacency --------------------------------------------------------

    def neighbors(self, coords: Sequence[int]) -> Iterator[tuple[int, ...]]:
        coords = self.validate(coords)
        for i, r in enumerate(self.radices):
            for value in range(r):
                if value != coords[i]:
                    yield coords[:i] + (value,) + coords[i + 1:]

    def neighbor_ranks(self, rank: int) -> Iterator[int]:
        rank = int(rank)
        for r, s in zip(self.radices, self.strides):
            d = (rank // s) % r
            base = rank - d * s
            for value in range(r):
                if value != d:
                    yield base + value * s

    def vertices(self) -> Iterator[tuple[int, ...]]:
        """All vertices in increasing rank order."""
        import itertools

        return itertools.product(*(range(r) for r in self.radices))

    # -- sets -------------------------------------------------------------

    def vertex_set(self, vertices: Iterable[Sequence[int]] = ()) -> "VertexSet":
        out = VertexSet(self.universe_size)
        for v in vertices:
            out.add(self.encode(v))
        return out

    def full_set(self) -> "VertexSet":
        return VertexSet.full(self.universe_size)

    def coords_of(self, vs: "VertexSet") -> list[tuple[int, ...]]:
        """Coordinates of the members of ``vs`` in increasing rank order."""
        return [tuple(int(c) for c in row) for row in self.decode_many(vs.ranks())]

    def with_guard(self, guard: int | None) -> "RadixVector":
        return RadixVector(self.radices, guard=guard)


class VertexSet:
    """Dense set of vertex ranks over ``range(universe_size)``.

    Backed by a boolean numpy array. Iteration yields ranks in increasing
    order. Mutate only through ``add``/``discard`` so the cached cardinality
    stays correct.
    """

    __slots__ = ("universe_size", "_mask", "_count")

    def __init__(self, universe_size: int, mask: np.ndarray | None = None):
        self.universe_size = int(universe_size)
        if mask is None:
            self._mask = np.zeros(self.universe_size, dtype=np.bool_)
            self._count = 0
        else:
            mask = np.asarray(mask)
            if mask.dtype != np.bool_ or mask.shape != (self.universe_size,):
                raise InputError("mask must be a boolean array of length universe_size")
            self._mask = mask
            self._count = int(np.count_nonzero(mask))

    @classmethod
    def from_ranks(cls, universe_size: int, ranks: Iterable[int]) -> "VertexSet":
        ranks = np.fromiter((int(r) for r in ranks), dtype=np.int64)
        if ranks.size and (ranks.min() < 0 or ranks.max() >= universe_size):
            raise InputError(f"rank outside [0, {universe_size})")
        mask = np.zeros(universe_size, dtype=np.bool_)
        mask[ranks] = True
        return cls(universe_size, mask)

    @classmethod
    def full(cls, universe_size: int) -> "VertexSet":
        return cls(universe_size, np.ones(universe_size, dtype=np.bool_))

    @property
    def mask(self) -> np.ndarray:
        view = self._mask.view()
        view.flags.writeable = False
        return view

    @property
    def cardinality(self) -> int:
        return self._count

    def __len__(self):
        return self._count

    def __bool__(self):
        return self._count > 0

    def __iter__(self) -> Iterator[int]:
        return (int(r) for r in np.flatnonzero(self._mask))

    def __contains__(self, rank) -> bool:
        rank = int(rank)
        return 0 <= rank < self.universe_size and bool(self._mask[rank])

    def ranks(self) -> np.ndarray:
        return np.flatnonzero(self._mask)

    def min_rank(self) -> int | None:
        if not self._count:
            return None
        return int(np.argmax(self._mask))

    def add(self, rank: int) -> None:
        rank = int(rank)
        if not 0 <= rank < self.universe_size:
            raise InputError(f"rank {rank} is outside [0, {self.universe_size})")
        if not self._mask[rank]:
            self._mask[rank] = True
            self._count += 1

    def discard(self, rank: int) -> None:
        rank = int(rank)
        if rank in self:
            self._mask[rank] = False
            self._count -= 1

    def copy(self) -> "VertexSet":
        return VertexSet(self.universe_size, self._mask.copy())

    def without(self, rank: int) -> "VertexSet":
        out = self.copy()
        out.discard(rank)
        return out

    def _check(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        if other.universe_size != self.universe_size:
            raise InputError("vertex sets live in different universes")
        return other

    def __or__(self, other):
        self._check(other)
        return VertexSet(self.universe_size, self._mask | other._mask)

    def __and__(self, other):
        self._check(other)
        return VertexSet(self.universe_size, self._mask & other._mask)

    def __sub__(self, other):
        self._check(other)
        return VertexSet(self.universe_size, self._mask & ~other._mask)

    def __le__(self, other):
        self._check(other)
        return not (self._mask & ~other._mask).any()

    def __ge__(self, other):
        return other <= self

    def __lt__(self, other):
        return self <= other and self._count < other._count

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return (
            self.universe_size == other.universe_size
            and self._count == other._count
            and bool(np.array_equal(self._mask, other._mask))
        )

    __hash__ = None

    def isdisjoint(self, other) -> bool:
        self._check(other)
        return not (self._mask & other._mask).any()

    def is_full(self) -> bool:
        return self._count == self.universe_size

    def __repr__(self):
        shown = list(self.ranks()[:8])
        more = ", ..." if self._count > 8 else ""
        return f"VertexSet(size={self._count}/{self.universe_size}, ranks={shown}{more})"


@dataclass(frozen=True)
class HammingSubgraph:
    """Induced sub-product given by fixing some coordinates.

    ``pattern[i]`` is the fixed value of coordinate ``i`` or ``None`` (free).
    """

    pattern: tuple
    radices: tuple

    def __post_init__(self):
        if len(self.pattern) != len(self.radices):
            raise InputError("pattern and radices differ in length")
        for entry, r in zip(self.pattern, self.radices):
            if entry is not FREE and not 0 <= entry < r:
                raise InputError(f"fixed value {entry} outside [0, {r})")

    @property
    def dimension(self) -> int:
        return sum(1 for e in self.pattern if e is FREE)

    @property
    def size(self) -> int:
        return math.prod(r for e, r in zip(self.pattern, self.radices) if e is FREE)

    def contains(self, coords: Sequence[int]) -> bool:
        return all(e is FREE or e == c for e, c in zip(self.pattern, coords))

    def vertex_set(self, rv: RadixVector) -> VertexSet:
        coords = rv.decode_many(np.arange(rv.universe_size))
        keep = np.ones(rv.universe_size, dtype=np.bool_)
        for i, e in enumerate(self.pattern):
            if e is not FREE:
                keep &= coords[:, i] == e
        return VertexSet(rv.universe_size, keep)

    def pattern_strings(self) -> list:
        """JSON-friendly pattern: fixed values as ints, free coordinates as ``"*"``."""
        return ["*" if e is FREE else int(e) for e in self.pattern]

    def __str__(self):
        return ",".join(str(e) for e in self.pattern_strings())

    @classmethod
    def parse(cls, text: str, rv: RadixVector) -> "HammingSubgraph":
        parts = [p.strip() for p in text.split(",")]
        pattern = tuple(FREE if p == "*" else int(p) for p in parts)
        return cls(pattern, rv.radices)


# -- module-level operations ---------------------------------------------


def encode(coords: Sequence[int], rv: RadixVector) -> int:
    return rv.encode(coords)


def decode(rank: int, rv: RadixVector) -> tuple[int, ...]:
    return rv.decode(rank)


def neighbors(v: Sequence[int], rv: RadixVector) -> Iterator[tuple[int, ...]]:
    return rv.neighbors(v)


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise InputError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


_PAIRWISE_LIMIT = 4_000_000


def set_distance(a: VertexSet, b: VertexSet, rv: RadixVector) -> int:
    """Minimum Hamming distance between a member of ``a`` and a member of ``b``."""
    if not a or not b:
        raise InputError("set_distance needs two nonempty sets")
    if not a.isdisjoint(b):
        return 0
    if len(a) * len(b) <= _PAIRWISE_LIMIT:
        small, large = (a, b) if len(a) <= len(b) else (b, a)
        large_coords = rv.decode_many(large.ranks())
        best = rv.dimension
        for row in rv.decode_many(small.ranks()):
            best = min(best, int((large_coords != row).sum(axis=1).min()))
            if best == 1:
                break
        return best
    return int(
        _kernels.bfs_distance_hamming(rv._radix_arr, rv._stride_arr, a._mask, b._mask)
    )


# -- set-file format -----------------------------------------------------


def parse_vertex_lines(text: str, rv: RadixVector | None = None, inline: bool = False):
    """Parse the set-file format into a list of coordinate tuples.

    One vertex per line (or per ``;``-separated chunk when ``inline``),
    coordinates comma-separated; blank lines and ``#`` comments are ignored.
    Duplicates are kept in order of first appearance. When ``rv`` is given,
    each vertex is validated against it.
    """
    chunks = text.split(";") if inline else text.splitlines()
    out: list[tuple[int, ...]] = []
    seen = set()
    for lineno, raw in enumerate(chunks, start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        coords = []
        columns = []
        col = 1
        for field in line.split(","):
            stripped = field.strip()
            offset = col + (len(field) - len(field.lstrip()))
            try:
                value = int(stripped)
            except ValueError:
                raise InputError(f"not an integer: {stripped!r}", line=lineno, column=offset)
            if value < 0:
                raise InputError(f"negative coordinate {value}", line=lineno, column=offset)
            coords.append(value)
            columns.append(offset)
            col += len(field) + 1
        vertex = tuple(coords)
        if rv is not None:
            if len(vertex) != rv.dimension:
                raise InputError(
                    f"expected {rv.dimension} coordinates, got {len(vertex)}", line=lineno, column=1
                )
            for i, (c, r) in enumerate(zip(vertex, rv.radices)):
                if c >= r:
                    raise InputError(f"coordinate {i + 1} = {c} is not below radix {r}",
                                     line=lineno, column=columns[i])
        if vertex not in seen:
            seen.add(vertex)
            out.append(vertex)
    return out


def format_vertex_lines(vertices: Iterable[Sequence[int]], header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    lines.extend(",".join(str(int(c)) for c in v) for v in vertices)
    return "\n".join(lines) + "\n"


def parse_radices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError:
        raise InputError(f"cannot parse radices {text!r}; expected e.g. 3,3,3")
