"""Hulls, convexity and boundaries on small Hamming graphs.

Run: python demos/01_hulls_and_boundaries.py
"""

from hamming_p3 import RadixVector, analyze, boundary, is_convex, p3_hull

# A Hamming graph is given by its factor sizes; vertices are mixed-radix tuples.
rv = RadixVector((3, 3))
print(rv, "has", rv.universe_size, "vertices of degree", rv.degree)
print("rank of (2, 2):", rv.encode((2, 2)))

# Two vertices at distance 2 infect their two common neighbours, and from
# there the whole 3x3 grid.
s = rv.vertex_set([(1, 0), (0, 1)])
hull = p3_hull(rv, s)
print("hull of", rv.coords_of(s), "has", len(hull), "vertices")
print("is the seed convex?", is_convex(rv, s))

# Every vertex except the two seeds lies only in the full hull.
bd = boundary(rv, s)
print("boundary size:", len(bd), "->", rv.coords_of(bd)[:4], "...")

# One dimension up, three vertices with a single coordinate of 1 removed.
rv3 = RadixVector((3, 3, 3))
report = analyze(rv3, rv3.vertex_set([(0, 1, 1), (1, 0, 1), (1, 1, 0)]))
print("H3 set: Carathéodory", report.is_caratheodory,
      "| hull set", report.is_hull_set,
      "| lowest boundary vertex", rv3.decode(report.witness))
print("hull sizes after removing each member:", report.removal_hull_sizes)
