"""List colouring of series-parallel graphs with girth constraints: constructive colourer,
adversarial gadgets, and exact certifying solvers."""

from .adversary import BadPathSpec, GadgetBundle, bad_path_list, build_gadget, check_claim1
from .bounds import bound_row
from .colours import check_colouring, enumerate_m_subsets, fresh_colours, validate_list_sizes
from .constructive import (
    OutsideClassError,
    PreconditionError,
    build_t_sets,
    colour_path_greedy,
    colour_path_pinned,
    colour_sp,
    extend_to_target,
)
from .oracle import BudgetExceeded, Colouring, NoColouring, solve_generic, solve_path_pinned_dp, verify_gadget
from .sp_core import (
    Acyclic,
    Chain,
    Edge,
    Finite,
    Parallel,
    RealizedGraph,
    Series,
    find_removable_chain,
    girth,
    is_path,
    parallel_compose,
    parallel_power,
    parse_sp_expression,
    random_sp_term,
    realize,
    series_compose,
    series_power,
    series_stretch,
)
