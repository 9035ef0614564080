"""Manual-versus-entropy threshold comparison and run summaries."""

from __future__ import annotations

import io
import json
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .dataset import Dataset, DistanceMatrix, pairwise_distances
from .datafield import FieldScan, SearchConfig, optimize_sigma
from .dpc import CenterStrategy, DpcParams, Partition, run_dpc

TSV_HEADER = ("dataset", "manual_noise", "manual_dc", "field_noise", "field_dc")


@dataclass(frozen=True)
class RunSummary:
    dc: float
    n_clusters: int
    noise_count: int
    center_indices: tuple[int, ...]
    sigma_star: Optional[float] = None
    h_min: Optional[float] = None

    @classmethod
    def from_run(cls, dc: float, partition: Partition, scan: Optional[FieldScan] = None):
        return cls(
            dc=float(dc),
            n_clusters=partition.n_clusters,
            noise_count=partition.noise_count,
            center_indices=tuple(int(c) for c in partition.centers),
            sigma_star=None if scan is None else scan.sigma_star,
            h_min=None if scan is None else scan.h_min,
        )

    def clustering_fields(self):
        """Everything except the entropy-search provenance."""
        return (self.dc, self.n_clusters, self.noise_count, self.center_indices)

    def to_dict(self):
        d = asdict(self)
        d["center_indices"] = list(self.center_indices)
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(
            dc=d["dc"],
            n_clusters=d["n_clusters"],
            noise_count=d["noise_count"],
            center_indices=tuple(d["center_indices"]),
            sigma_star=d.get("sigma_star"),
            h_min=d.get("h_min"),
        )


@dataclass(frozen=True)
class ComparisonRow:
    dataset_name: str
    manual: RunSummary
    datafield: RunSummary

    def to_dict(self):
        return {
            "dataset_name": self.dataset_name,
            "manual": self.manual.to_dict(),
            "datafield": self.datafield.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["dataset_name"], RunSummary.from_dict(d["manual"]), RunSummary.from_dict(d["datafield"]))


def compare(
    ds: Dataset,
    manual_dc: float,
    strategy: CenterStrategy,
    kernel: str = "gaussian",
    name: str = "dataset",
    cfg: SearchConfig = SearchConfig(),
    dm: Optional[DistanceMatrix] = None,
) -> ComparisonRow:
    """Cluster ``ds`` twice, changing nothing but the cutoff distance."""
    if not manual_dc > 0:
        raise ValueError(f"manual dc must be positive, got {manual_dc!r}")
    if dm is None:
        dm = pairwise_distances(ds)
    scan = optimize_sigma(dm, cfg)
    summaries = []
    for dc, s in ((manual_dc, None), (scan.dc, scan)):
        _, part = run_dpc(dm, DpcParams(dc, kernel, strategy))
        summaries.append(RunSummary.from_run(dc, part, s))
    return ComparisonRow(name, *summaries)


def render_table(rows: Sequence[ComparisonRow], format: str = "tsv") -> str:
    """Render comparison rows as TSV (thresholds to 6 decimals) or JSON."""
    rows = list(rows)
    if not rows:
        raise ValueError("nothing to render")
    if format == "json":
        # full float precision so that parse_table(render_table(rows)) == rows
        return json.dumps([r.to_dict() for r in rows], indent=2) + "\n"
    if format != "tsv":
        raise ValueError(f"unknown table format {format!r}")
    buf = io.StringIO()
    buf.write("\t".join(TSV_HEADER) + "\n")
    for r in rows:
        buf.write(
            f"{r.dataset_name}\t{r.manual.noise_count}\t{r.manual.dc:.6f}"
            f"\t{r.datafield.noise_count}\t{r.datafield.dc:.6f}\n"
        )
    return buf.getvalue()


def parse_table(text: str) -> list[ComparisonRow]:
    return [ComparisonRow.from_dict(d) for d in json.loads(text)]
