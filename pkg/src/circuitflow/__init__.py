"""circuitflow: closed-form social influence computation and seed selection.

The model treats influence like current in a damped resistive circuit: each
node passes on a fraction of the influence reaching it, shrunk by a per-node
damping coefficient.  Influence of a seed set then has a closed linear-system
form, which this package solves sparsely, bounds from above, and optimizes
seed sets against — with Monte-Carlo cascade and stochastic fixed-point
models alongside for validation.
"""

from .errors import (
    CircuitFlowError,
    EdgeListError,
    NonConvergenceError,
    UsageError,
    ValidationError,
)
from .graph import (
    DEFAULT_LAMBDA,
    DampingConfig,
    InfluenceGraph,
    TransmissionMatrix,
    build_wc_transmission,
    load_damping_file,
    load_edge_list,
    scale_transmission,
)
from .solver import (
    BasisColumn,
    InfluenceVector,
    PotentialVector,
    SolverOptions,
    SparseRowSystem,
    basis_column,
    gauss_seidel,
    potential_vector,
    reduced_influence,
)
from .influence import InfluenceEngine, SeedCorrection
from .propagation import (
    ExactCascadeResult,
    SimulationResult,
    StInfluenceVector,
    ic_exact,
    ic_exact_provider,
    ic_mc_provider,
    ic_simulate,
    lc_provider,
    model_similarity,
    sample_seed_sets,
    st_fixed_point,
    st_provider,
    worker_count,
)
from .selection import (
    RankedScores,
    SeedSelection,
    celf_ic_select,
    degree_discount_topk,
    degree_topk,
    delta_complete,
    delta_fast,
    greedy_select,
    pagerank_rank,
)
from .generate import (
    erdos_renyi_edges,
    preferential_attachment_edges,
    write_edge_list,
)

__version__ = "0.1.0"
