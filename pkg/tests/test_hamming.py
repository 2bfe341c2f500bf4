import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamming_p3.errors import GuardExceeded, InputError
from hamming_p3.hamming import (
    HammingSubgraph,
    RadixVector,
    VertexSet,
    decode,
    encode,
    format_vertex_lines,
    hamming_distance,
    neighbors,
    parse_radices,
    parse_vertex_lines,
    set_distance,
)

radix_lists = st.lists(st.integers(1, 4), min_size=1, max_size=5)


def test_encode_examples():
    rv3 = RadixVector((3, 3, 3))
    assert encode((0, 0, 0), rv3) == 0
    assert encode((1, 1, 0), rv3) == 12
    assert encode((2, 2), RadixVector((3, 3))) == 8


def test_encode_rejects_out_of_range():
    rv = RadixVector((3, 3))
    with pytest.raises(InputError):
        encode((3, 0), rv)
    with pytest.raises(InputError):
        encode((0, 0, 0), rv)
    with pytest.raises(InputError):
        decode(9, rv)


def test_neighbor_examples():
    assert set(neighbors((0, 0), RadixVector((3, 3)))) == {(1, 0), (2, 0), (0, 1), (0, 2)}
    assert list(neighbors((0,), RadixVector((2,)))) == [(1,)]
    rv = RadixVector((3, 3, 3))
    nb = set(neighbors((1, 1, 1), rv))
    brute = {v for v in rv.vertices() if hamming_distance(v, (1, 1, 1)) == 1}
    assert nb == brute and len(nb) == 6


def test_hamming_distance():
    assert hamming_distance((1, 2, 0), (1, 2, 0)) == 0
    assert hamming_distance((0, 0, 0), (1, 1, 0)) == 2
    with pytest.raises(InputError):
        hamming_distance((0, 0), (0, 0, 0))


@given(radix_lists, st.data())
def test_encode_decode_bijection(radices, data):
    rv = RadixVector(radices)
    rank = data.draw(st.integers(0, rv.universe_size - 1))
    assert rv.encode(rv.decode(rank)) == rank


def test_vectorized_encoding_matches_scalar():
    rv = RadixVector((2, 3, 4))
    ranks = np.arange(rv.universe_size)
    coords = rv.decode_many(ranks)
    assert [tuple(c) for c in coords] == list(rv.vertices())
    assert np.array_equal(rv.encode_many(coords), ranks)


@given(radix_lists, st.data())
@settings(max_examples=60)
def test_metric_axioms(radices, data):
    rv = RadixVector(radices)
    vertex = st.integers(0, rv.universe_size - 1).map(rv.decode)
    a, b, c = data.draw(vertex), data.draw(vertex), data.draw(vertex)
    assert hamming_distance(a, b) == hamming_distance(b, a)
    assert (hamming_distance(a, b) == 0) == (a == b)
    assert hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c)


@given(radix_lists, st.data())
@settings(max_examples=60)
def test_neighbor_ranks_symmetric_and_complete(radices, data):
    rv = RadixVector(radices)
    r = data.draw(st.integers(0, rv.universe_size - 1))
    nbrs = list(rv.neighbor_ranks(r))
    assert len(nbrs) == len(set(nbrs)) == rv.degree
    for u in nbrs:
        assert r in set(rv.neighbor_ranks(u))
        assert hamming_distance(rv.decode(u), rv.decode(r)) == 1


def _networkx_hamming(rv):
    g = nx.Graph()
    g.add_nodes_from(range(rv.universe_size))
    for u in range(rv.universe_size):
        g.add_edges_from((u, v) for v in rv.neighbor_ranks(u))
    return g


def test_set_distance_against_networkx():
    rng = np.random.default_rng(7)
    rv = RadixVector((3, 3, 2, 3))
    g = _networkx_hamming(rv)
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    for _ in range(40):
        a = rng.choice(rv.universe_size, size=rng.integers(1, 5), replace=False)
        b = rng.choice(rv.universe_size, size=rng.integers(1, 5), replace=False)
        expected = min(lengths[int(x)][int(y)] for x in a for y in b)
        got = set_distance(VertexSet.from_ranks(rv.universe_size, a),
                           VertexSet.from_ranks(rv.universe_size, b), rv)
        assert got == expected


def test_set_distance_large_sets_use_bfs_path():
    rv = RadixVector.uniform(12, 3)
    a = HammingSubgraph((None,) * 8 + (0,) * 4, rv.radices).vertex_set(rv)
    b = HammingSubgraph((None,) * 8 + (1, 1, 2, 2), rv.radices).vertex_set(rv)
    assert len(a) * len(b) > 4_000_000
    assert set_distance(a, b, rv) == 4


def test_set_distance_examples():
    rv = RadixVector((3, 3, 3))
    a = rv.vertex_set([(0, 0, 0), (1, 2, 0)])
    assert set_distance(a, a, rv) == 0
    assert set_distance(rv.vertex_set([(0, 0, 0)]), rv.vertex_set([(1, 1, 1)]), rv) == 3
    with pytest.raises(InputError):
        set_distance(rv.vertex_set(), a, rv)


def test_radix_vector_validation():
    with pytest.raises(InputError):
        RadixVector(())
    with pytest.raises(InputError):
        RadixVector((3, 0))
    with pytest.raises(GuardExceeded):
        RadixVector.uniform(17, 3)
    assert RadixVector.uniform(17, 3, guard=None).universe_size == 3**17


def test_vertex_set_operations():
    a = VertexSet.from_ranks(10, [1, 2, 3])
    b = VertexSet.from_ranks(10, [3, 4])
    assert list(a | b) == [1, 2, 3, 4]
    assert list(a & b) == [3]
    assert list(a - b) == [1, 2]
    assert VertexSet.from_ranks(10, [1]) < a
    assert not a.isdisjoint(b)
    assert a.min_rank() == 1 and VertexSet(10).min_rank() is None
    c = a.without(2)
    assert 2 in a and 2 not in c
    with pytest.raises(InputError):
        a | VertexSet(11)
    with pytest.raises(ValueError):
        a.mask[0] = True


def test_subgraph_pattern_and_parse():
    rv = RadixVector((3, 3, 3))
    sub = HammingSubgraph.parse("*,1,*", rv)
    assert sub.dimension == 2 and sub.size == 9
    assert str(sub) == "*,1,*"
    members = sub.vertex_set(rv)
    assert all(rv.decode(r)[1] == 1 for r in members)


def test_parse_vertex_lines_format():
    text = "# header\n0,1,2\n\n1, 1,0  # trailing\n0,1,2\n"
    assert parse_vertex_lines(text) == [(0, 1, 2), (1, 1, 0)]
    assert parse_vertex_lines("0,1;1,0", inline=True) == [(0, 1), (1, 0)]
    out = format_vertex_lines([(0, 1), (1, 0)], header="demo")
    assert parse_vertex_lines(out) == [(0, 1), (1, 0)]


@pytest.mark.parametrize("text, line, column", [
    ("0,0\n0,x\n", 2, 3),
    ("0,0\n\n1, 5\n", 3, 4),
    ("0,0,0\n", 1, 1),
])
def test_parse_errors_carry_position(text, line, column):
    rv = RadixVector((3, 3))
    with pytest.raises(InputError) as info:
        parse_vertex_lines(text, rv)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_parse_radices():
    assert parse_radices("3, 3,2") == (3, 3, 2)
    with pytest.raises(InputError):
        parse_radices("3,a")


def test_vertices_enumeration_order():
    rv = RadixVector((2, 3))
    assert list(rv.vertices()) == list(itertools.product(range(2), range(3)))
