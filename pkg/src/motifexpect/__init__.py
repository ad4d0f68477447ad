"""Exact and Monte Carlo expected motif counts for latent-variable graph models.

For models that draw each link independently given a latent vector, the
expected motif count conditional on the latent equals the ordered motif
count evaluated directly on the matrix of link probabilities.  This package
implements that shortcut, the Monte Carlo integration over the latent prior,
an exhaustive small-graph oracle that verifies the identity, and the related
ordered-vs-set count relation through motif automorphisms.
"""

from .errors import MotifExpectError, ParseError, SizeLimitError, ValidationError
from .estimate import (
    EstimateReport,
    SignificanceReport,
    conditional_expected_count,
    estimate_expected_count,
    naive_estimate,
    significance,
)
from .graphs import (
    DEFAULT_MAX_ARITY,
    Graph,
    Motif,
    WeightedGraph,
    link_indices,
    load_graph,
    load_motif,
    permute_nodes,
    save_graph,
    threshold_to_graph,
)
from .mixture import (
    InnerProductDecoder,
    PriorSpec,
    TableDecoder,
    graph_log_likelihood,
    load_decoder,
    load_latents,
    sample_graph,
    sample_latent,
)
from .motifs import (
    automorphism_count,
    enumerate_motifs,
    motif_indicator,
    ordered_count,
    ordered_count_stack,
    set_count,
    triangle_count_trace,
    triangle_motif,
)
from .oracle import (
    ConjectureReport,
    ExactDistribution,
    check_conjecture,
    enumerate_graphs,
    exact_conditional_expectation,
    exact_count_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "MotifExpectError",
    "ParseError",
    "SizeLimitError",
    "ValidationError",
    "Graph",
    "WeightedGraph",
    "Motif",
    "DEFAULT_MAX_ARITY",
    "link_indices",
    "load_graph",
    "save_graph",
    "load_motif",
    "permute_nodes",
    "threshold_to_graph",
    "motif_indicator",
    "ordered_count",
    "ordered_count_stack",
    "set_count",
    "automorphism_count",
    "triangle_count_trace",
    "triangle_motif",
    "enumerate_motifs",
    "PriorSpec",
    "TableDecoder",
    "InnerProductDecoder",
    "load_decoder",
    "load_latents",
    "graph_log_likelihood",
    "sample_graph",
    "sample_latent",
    "EstimateReport",
    "SignificanceReport",
    "conditional_expected_count",
    "estimate_expected_count",
    "naive_estimate",
    "significance",
    "enumerate_graphs",
    "exact_conditional_expectation",
    "exact_count_distribution",
    "ExactDistribution",
    "check_conjecture",
    "ConjectureReport",
]
