"""Convex sets split into Hamming subgraphs; the distance cases in action.

Run: python demos/02_decomposition_and_lemmas.py
"""

from hamming_p3 import (
    HammingSubgraph,
    RadixVector,
    check_distance_lemma,
    check_two_subgraph_lemma,
    decompose,
    p3_hull,
)

rv = RadixVector.uniform(6, 3)
seed = rv.vertex_set([(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0)])
hull = p3_hull(rv, seed)
for comp in decompose(rv, hull).components:
    print(f"component {comp.subgraph}: dimension {comp.dimension}, {comp.size} vertices")

# Two far-apart points stay separate.
pair = rv.vertex_set([(0,) * 6, (1, 1, 1, 0, 0, 0)])
print("components of a distance-3 pair:", len(decompose(rv, p3_hull(rv, pair))))

# Adding a vertex at distance 1, 2 or 3 from a hull.
rv3 = RadixVector((3, 3, 3))
base = rv3.vertex_set([(0, 0, 0)])
for x in [(1, 0, 0), (1, 1, 0), (1, 1, 1)]:
    check = check_distance_lemma(rv3, base, x)
    print(f"x = {x}: distance {check.distance}, case '{check.case}', holds {check.holds}")

# Two subgraphs one step apart merge into a single larger subgraph.
rv5 = RadixVector.uniform(5, 3)
a = HammingSubgraph.parse("*,0,0,0,0", rv5)
b = HammingSubgraph.parse("0,*,1,0,0", rv5)
check = check_two_subgraph_lemma(rv5, a, b)
print(f"{a} and {b}: distance {check.distance}, merged into {check.observed}")
