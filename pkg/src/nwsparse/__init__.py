"""Exact solvers for community-aware network sparsification (Stars / Connectivity NWS)."""
from .core import (Deadline, Instance, NWSError, OracleResult, ParseError, Property, Solution,
                   Timeout, VerifyReport, WeightedGraph, feedback_edge_parameter, format_rational,
                   hypergraph_components, induced_edge_set, is_community_connected, make_solution,
                   parse_rational, universal_vertices, verify_solution)
from .formats import format_instance, format_solution, parse_instance, parse_solution
from .oracle import (NotUnweighted, RelevantEdgeLimit, solve_branching_ell, solve_center_enumeration,
                     solve_deletion_side, solve_subset_enumeration)
from .stars_fpt_c import center_twins_partition, solve_snws
from .stars_xp import fitting_solve, solve_stars_xp
from .tree_support import WrongParameterRegime, solve_forest_support

__all__ = [name for name in dir() if not name.startswith("_")]
