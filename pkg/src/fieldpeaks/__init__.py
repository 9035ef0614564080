"""Density-peaks clustering with the cutoff distance chosen by potential entropy."""

from .dataset import Dataset, DatasetError, DistanceMatrix, load_dataset, pairwise_distances
from .datafield import (
    DC_FACTOR,
    DegenerateFieldError,
    FieldScan,
    PotentialVector,
    SearchConfig,
    derive_dc,
    entropy,
    entropy_curve,
    optimize_sigma,
    potentials,
)
from .dpc import (
    DpcParams,
    DpcState,
    GammaGap,
    Partition,
    TopK,
    assign_clusters,
    delta_and_neighbor,
    detect_halo,
    local_density,
    parse_centers,
    run_dpc,
    select_centers,
)
from .report import ComparisonRow, RunSummary, compare, parse_table, render_table

__version__ = "0.1.0"
