"""Compare c and p on Hamming graphs that have a factor of size 2.

Run: python demos/06_k2_exploration.py
"""

from hamming_p3 import RadixVector, SearchBudget, explore_k2_conjecture

for radices in [(2, 2), (2, 2, 2), (2, 3, 3), (2, 2, 2, 3)]:
    budget = SearchBudget(max_subset_size=6, canonicalize=2)
    report = explore_k2_conjecture(RadixVector(radices), budget)
    c, p = report.caratheodory, report.minimal_hull
    scope = "all sizes" if report.conclusive else f"sizes <= {c.max_size_searched}"
    print(f"{radices}: c = {c.best_size}, p = {p.best_size} ({scope}); "
          f"c < p: {report.c_less_than_p}")
