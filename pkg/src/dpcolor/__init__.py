"""Exact DP-coloring (correspondence coloring) on small graphs."""

__version__ = "0.1.0"

from .errors import PreconditionError, ResourceLimitError
from .graph import (
    DegeneracyOrder,
    Graph,
    chromatic_number,
    complete,
    complete_bipartite,
    cycle,
    degeneracy,
    empty,
    join,
    make_graph,
    min_degree,
    path,
)
from .cover import (
    Cover,
    Restriction,
    ValidationReport,
    check_transversal,
    complete_matchings,
    cover_at,
    cover_count,
    cover_from_lists,
    enumerate_covers,
    gauge_fix,
    list_coloring_to_transversal,
    make_cover,
    remove_and_restrict,
    transversal_to_list_coloring,
    validate_cover,
)
from .solver import Colorability, SolveResult, chi_dp, find_transversal, greedy_transversal, is_dp_colorable_at
from .constructions import HardInstance, hard_instance, verify_hard_instance
from .bounds import (
    BoundsReport,
    SigmaReport,
    chi_equals_chidp_guaranteed,
    sigma_report,
    zdp_exact,
    zdp_n_bounds,
    zdp_upper,
)
