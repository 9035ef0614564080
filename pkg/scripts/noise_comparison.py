"""Manual-versus-entropy threshold table on blob-plus-background synthetics.

A synthetic counterpart to the published comparison: same pipeline and
center count, only the cutoff distance differs. The manual threshold is
the 2% quantile of pairwise distances unless --manual-quantile is given.

    python scripts/noise_comparison.py --seeds 5 --format tsv
"""

import argparse

import numpy as np

from fieldpeaks import TopK, compare, pairwise_distances, render_table
from fieldpeaks.synthetic import blobs_with_background

parser = argparse.ArgumentParser()
parser.add_argument("--seeds", type=int, default=4)
parser.add_argument("--manual-quantile", type=float, default=2.0, help="percent")
parser.add_argument("--format", choices=("tsv", "json"), default="tsv")
args = parser.parse_args()

rows = []
for seed in range(args.seeds):
    ds, truth = blobs_with_background(seed)
    dm = pairwise_distances(ds)
    manual = float(np.percentile(dm.dist[np.triu_indices(dm.n, 1)], args.manual_quantile))
    rows.append(compare(ds, manual, TopK(3), name=f"blobs-{seed}", dm=dm))
print(render_table(rows, args.format), end="")
