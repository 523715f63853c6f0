"""Exact Steiner distance, Steiner k-radius and k-diameter of graphs."""

from .decomposition import (
    Decomposition,
    Tree,
    TreeShape,
    classify_shape,
    decompose,
    locate_x,
    prune_to_t_double_prime,
    spanning_subtree,
)
from .eccentricity import (
    BudgetExceeded,
    EccentricityReport,
    RadiusDiameterReport,
    diametral_set,
    k_eccentricity,
    steiner_center,
    steiner_diameter,
    steiner_profile,
    steiner_radius,
)
from .families import EnsembleConfig, FamilyHandle, build_gk, build_h, random_graph
from .graph import (
    UNREACHABLE,
    Graph,
    GraphError,
    bfs_distances,
    center,
    diameter,
    eccentricity,
    induced_subgraph,
    is_connected,
    radius,
    read_graph,
    subdivide_edge,
    write_graph,
)
from .scan import ScanResult, ratio_scan, seeded_corpus
from .steiner import (
    SteinerResult,
    enumerate_min_steiner_trees,
    steiner_distance,
    steiner_distance_bruteforce,
)
from .verify import (
    VerificationReport,
    bound_for,
    check_bound,
    check_lemma,
    check_tree_bound,
    verify_claim_violation,
    verify_gk,
    verify_h,
)

__version__ = "0.1.0"
