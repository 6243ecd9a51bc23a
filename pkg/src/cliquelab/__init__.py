"""cliquelab: exact enumeration oracles, clique-hypergraph co-degree
statistics, log-domain certificate checks and closed-form bound evaluators
for counting graphs without large cliques.
"""

from .bounds import (
    BoundsReport,
    bounds_report,
    case_analysis,
    final_count_bound,
    generalized_binomial,
    k_threshold,
    lower_bound_log2,
    lower_bound_weak_floor,
    main_term_log2,
    supersat_bound,
    upper_bound_log2,
)
from .certificate import (
    CertificateReport,
    ContainerParams,
    StepCheck,
    ThresholdSearch,
    check_container_hypotheses,
    container_count_log2,
    corollary_params,
    minimal_n_threshold,
    verify_proof_chain,
)
from .errors import BudgetExceededError, WorkGuardError
from .graphs import (
    GraphError,
    LabeledGraph,
    TuranPartition,
    count_cliques,
    from_text,
    has_clique,
    is_subgraph,
    make_graph,
    read_graph,
    to_text,
    turan_edge_count,
    turan_graph,
    turan_partition,
    write_graph,
)
from .hypergraph import (
    CliqueHypergraphStats,
    brute_max_codegree,
    codegree,
    delta_function,
    delta_function_exact,
    delta_function_log,
    hypergraph_params,
    hypergraph_params_log,
    max_codegree,
    spanned_vertices,
    v_min,
)
from .logmag import LogMagnitude
from .oracle import (
    EnumerationResult,
    SupersatResult,
    ValidationReport,
    count_free_graphs,
    count_free_graphs_ie,
    maximal_free_family,
    min_cliques_at_edge_count,
    validate_container_family,
)

__version__ = "0.1.0"
