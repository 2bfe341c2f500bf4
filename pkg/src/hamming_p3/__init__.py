"""P3-convexity in Hamming graphs.

Hull engine, Carathéodory and hull-set predicates, the explicit large
Carathéodory families and exhaustive search for small cases.
"""

__version__ = "0.1.0"

from .constructions import (
    ConstructionFamily,
    FamilyVerification,
    QSequence,
    build_family,
    caratheodory_formula,
    lower_bound_set,
    q_sequence,
    small_caratheodory_set,
    verify_family,
)
from .convexity import (
    CaratheodoryReport,
    HullDecomposition,
    ReportSummary,
    analyze,
    boundary,
    check_distance_lemma,
    check_two_subgraph_lemma,
    components_of,
    decompose,
    hull_dimension_thresholds,
    summarize,
)
from .errors import (
    ContractViolation,
    GuardExceeded,
    InputError,
    P3Error,
    PreconditionError,
    Unsupported,
)
from .hamming import (
    HammingSubgraph,
    RadixVector,
    VertexSet,
    decode,
    encode,
    hamming_distance,
    neighbors,
    set_distance,
)
from .hull import (
    AdjacencyGraph,
    hull_fixed_point_oracle,
    hull_of,
    is_convex,
    p3_hull,
    record_hulls,
)
from .search import (
    K2Exploration,
    RepairResult,
    SearchBudget,
    SearchResult,
    explore_k2_conjecture,
    max_caratheodory,
    max_minimal_hull_set,
    repair_base_list,
)
