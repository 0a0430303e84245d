"""Forest closeness centrality: exact, UST-sampled and greedy group variants."""

from .approx import (
    ApproxConfig,
    DiagResult,
    approx_diag_forest_matrix,
    compute_tau,
    exact_diag_result,
    rank_vertices,
)
from .dense import (
    brute_force_best_group,
    exact_farness_closeness,
    forest_distance,
    forest_matrix,
    group_farness_exact,
    pseudo_inverse_Lstar,
)
from .errors import (
    ForestClosenessError,
    GraphFormatError,
    OracleSizeError,
    ParameterError,
    SolverError,
)
from .generators import generate
from .graph import AugmentedGraph, Graph, LoadOptions, augment, load_edge_list, read_edge_list
from .group import GroupResult, greedy_group, marginal_gain_exact
from .jlt import JltConfig, jlt_diag
from .metrics import avg_abs_error, kendall_tau, max_abs_error
from .solver import SolverConfig, solve_laplacian

__all__ = [
    "ApproxConfig", "DiagResult", "approx_diag_forest_matrix", "compute_tau",
    "exact_diag_result", "rank_vertices", "brute_force_best_group",
    "exact_farness_closeness", "forest_distance", "forest_matrix",
    "group_farness_exact", "pseudo_inverse_Lstar", "ForestClosenessError",
    "GraphFormatError", "OracleSizeError", "ParameterError", "SolverError",
    "generate", "AugmentedGraph", "Graph", "LoadOptions", "augment",
    "load_edge_list", "read_edge_list", "GroupResult", "greedy_group",
    "marginal_gain_exact", "JltConfig", "jlt_diag", "avg_abs_error",
    "kendall_tau", "max_abs_error", "SolverConfig", "solve_laplacian",
]
