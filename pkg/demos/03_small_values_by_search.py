"""Exhaustive search for Carathéodory numbers and maximal minimal hull sets.

Run: python demos/03_small_values_by_search.py
"""

from hamming_p3 import (
    AdjacencyGraph,
    RadixVector,
    SearchBudget,
    max_caratheodory,
    max_minimal_hull_set,
)

# Complete graphs, paths and cycles on at least three vertices all give 2.
for name, graph in [("K5", AdjacencyGraph.complete(5)), ("P6", AdjacencyGraph.path(6)),
                    ("C7", AdjacencyGraph.cycle(7)), ("K2", AdjacencyGraph.complete(2))]:
    print(name, "c =", max_caratheodory(graph).best_size)

# H3(3,3,3): no 4-subset is a Carathéodory set.
h3 = max_caratheodory(RadixVector((3, 3, 3)), SearchBudget(max_subset_size=4))
print("H3: best", h3.best_size, "exhaustive up to size", h3.max_size_searched,
      "after", h3.candidates_examined, "subsets; witness", h3.witness)

# Symmetry reduction visits far fewer subsets for the same answer.
for level in (0, 1, 2):
    r = max_caratheodory(RadixVector((3, 3, 3)),
                         SearchBudget(max_subset_size=5, canonicalize=level))
    print(f"canonicalize={level}: best {r.best_size}, {r.candidates_examined} subsets")

p = max_minimal_hull_set(RadixVector((3, 3, 3)), SearchBudget(max_subset_size=4))
print("largest minimal hull set of H3 up to size 4:", p.best_size)
