"""Group edge coloring and group list edge coloring at desk scale."""

__version__ = "0.1.0"

from .abelian import Group, abelian_groups_of_order, make_group, parse_group
from .graphcore import Graph, Orientation, girth, degeneracy, line_graph
from .planemb import PlaneGraph, build_plane_graph
from .groupcolor import (
    ForbiddenAssignment,
    ListAssignment,
    PeelingStuck,
    greedy_extend,
    peel_and_color,
    solve_exact,
    verify_coloring,
)
from .choosability import (
    classify_bound,
    criticality_obstructions,
    edge_variant,
    group_chromatic_number_bounded,
    group_choice_number_bounded,
    is_A_colorable,
    is_group_k_choosable,
)
from .discharging import apply_rules, builtin_ruleset, initial_charges, nonnegativity_report
