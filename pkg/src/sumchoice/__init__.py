"""Sum choice numbers: exact oracles, bounds, and witness constructions."""

from .bipartite import (
    BoundsReport,
    ConstrAssignment,
    RandomProcessTrace,
    bounds_report,
    closed_form,
    constr_assignment,
    default_pick_probability,
    lb_bound,
    lb_witness,
    random_transversal,
    random_type2_assignment,
    recommended_r,
    transversal_trials,
    ub_bound,
)
from .choosability import (
    BudgetExceededError,
    ColoringWitness,
    ListAssignment,
    SizeFunction,
    Verdict,
    bipartite_is_sufficient,
    color_from_lists,
    enumerate_canonical_assignments,
    is_sufficient,
    lists_from_json,
    lists_to_json,
    split_is_sufficient,
    transversal_check,
)
from .exact import (
    SumChoiceResult,
    edge_bound,
    greedy_sufficient_f,
    sum_choice_exact,
    sum_choice_type2_exact,
)
from .graphs import (
    Graph,
    GraphError,
    VertexOrder,
    degeneracy_order,
    generate,
    graph_from_json,
    graph_to_json,
    make_graph,
)
from .turan import (
    SdrResult,
    SideConditionError,
    SplitBounds,
    independent_sdr,
    sharp_family,
    split_bounds,
    split_witness,
    t_balanced,
)
from .type2 import (
    ReducedGraph,
    ReducedWitness,
    beta,
    chi_sc2_reduced,
    enumerate_blocking,
    is_blocking,
    materialize_reduced_witness,
    phi,
    symmetrize,
    type2_insufficient,
)

__version__ = "0.1.0"
