"""Bounds on the sequential topological complexity of unordered graph
configuration spaces, with machine-checked free-group lemmas."""

from .graph_core import (
    Graph,
    GraphFormatError,
    HypothesisError,
    VertexClassification,
    classify,
    components_without,
    graph_from_data,
    graph_to_data,
    is_separating,
    load_graph,
    normalize,
    valence,
)
from .free_groups import (
    FoldedAutomaton,
    FreeHom,
    FreeWord,
    apply_hom,
    commutator,
    concat,
    contains,
    disjoint_conjugates,
    disjoint_conjugates_bruteforce,
    generator,
    identity,
    inverse,
    parse_word,
    pullback,
    reduce_word,
    restriction_injective,
    stallings_core,
    subgroup_rank,
    word_str,
)
from .local_graphs import (
    EquivRelation,
    FreeBasis,
    LambdaGraph,
    build_lambda,
    free_basis,
    local_quotient,
    pi1_rank,
    sink_stabilization,
    star_commutator_subgroups,
    trivalent_product_subgroups,
)
from .discrete_config import (
    BettiVector,
    CellBudgetError,
    CubicalComplex,
    betti,
    build_complex,
    nonvanishing_check,
    sufficient_subdivision,
)
from .tc_bounds import (
    BoundQuery,
    BoundReport,
    lower_bound,
    proof_chain_check,
    stable_report,
    upper_bound,
)

__version__ = "0.1.0"
