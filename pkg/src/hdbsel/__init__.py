"""Density-based hierarchical clustering with threshold-aware cluster selection."""
from .condensed import ClusterStats, CondensedTree, compute_stats, condense
from .errors import (
    ClusteringError,
    DimensionError,
    InputError,
    ParameterError,
    StructuralError,
    UndefinedScoreError,
)
from .hierarchy import NOISE, Dendrogram, MSTEdge, build_mst, horizontal_cut, single_linkage
from .metrics import PointSet, core_distances, mutual_reachability, pairwise_distances
from .pipeline import PipelineResult, RunConfig, run_pipeline
from .selection import (
    EpsilonStability,
    Selection,
    epsilon_stability,
    extract_labels,
    select_eom,
    select_epsilon,
    select_leaf,
)
from .synthetic import generate_synthetic
from .validation import EvalReport, adjusted_rand_index, clustered_fraction, evaluate

__version__ = "0.1.0"
