import json

import numpy as np
import pytest

import oracles
from fieldpeaks.dataset import Dataset, pairwise_distances
from fieldpeaks.datafield import optimize_sigma
from fieldpeaks.dpc import DpcParams, GammaGap, TopK, run_dpc
from fieldpeaks.report import TSV_HEADER, ComparisonRow, RunSummary, compare, parse_table, render_table
from fieldpeaks.synthetic import blobs_with_background, gaussian_blobs


@pytest.fixture(scope="module")
def noisy():
    ds, _ = blobs_with_background(0)
    return ds


def row_c():
    # Table-1 style row with the thresholds printed for dataset (c)
    manual = RunSummary(dc=2.263846, n_clusters=5, noise_count=112, center_indices=(1, 2, 3, 4, 5))
    field = RunSummary(dc=2.021853, n_clusters=5, noise_count=100, center_indices=(1, 2, 3, 4, 5),
                       sigma_star=0.9531, h_min=6.5)
    return ComparisonRow("c", manual, field)


def test_tsv_renders_table_format():
    text = render_table([row_c()])
    lines = text.splitlines()
    assert lines[0] == "dataset\tmanual_noise\tmanual_dc\tfield_noise\tfield_dc"
    assert lines[0].split("\t") == list(TSV_HEADER)
    assert lines[1] == "c\t112\t2.263846\t100\t2.021853"


def test_tsv_line_count_and_order():
    a = row_c()
    b = ComparisonRow("d", a.datafield, a.manual)
    lines = render_table([a, b]).splitlines()
    assert len(lines) == 3
    assert [ln.split("\t")[0] for ln in lines[1:]] == ["c", "d"]


def test_json_round_trip():
    rows = [row_c(), ComparisonRow("x", row_c().datafield, row_c().manual)]
    text = render_table(rows, "json")
    assert parse_table(text) == rows
    data = json.loads(text)
    assert set(data[0]) == {"dataset_name", "manual", "datafield"}
    assert set(data[0]["manual"]) == {"sigma_star", "dc", "h_min", "n_clusters", "noise_count", "center_indices"}
    assert data[0]["manual"]["sigma_star"] is None


def test_render_rejects_empty_and_unknown():
    with pytest.raises(ValueError):
        render_table([])
    with pytest.raises(ValueError):
        render_table([row_c()], "xml")


def test_compare_same_dc_identical(noisy):
    dc = optimize_sigma(pairwise_distances(noisy)).dc
    row = compare(noisy, dc, GammaGap())
    assert row.manual.clustering_fields() == row.datafield.clustering_fields()
    assert row.manual.sigma_star is None and row.datafield.sigma_star is not None


def test_compare_noise_counts_match_halo_oracle(noisy):
    dm = pairwise_distances(noisy)
    field_dc = optimize_sigma(dm).dc
    row = compare(noisy, 0.5 * field_dc, TopK(3), name="noisy")
    table = oracles.dist_table(noisy.points.tolist())
    for summary in (row.manual, row.datafield):
        assert summary.n_clusters == 3 == len(summary.center_indices)
        assert 0 <= summary.noise_count <= noisy.n
        state, part = run_dpc(dm, DpcParams(summary.dc, "gaussian", TopK(3)))
        halo = oracles.naive_halo(table, summary.dc, state.rho.tolist(), part.labels.tolist())
        assert summary.noise_count == sum(halo)
    assert row.manual.noise_count != row.datafield.noise_count
    assert row.datafield.dc == pytest.approx(field_dc, rel=0)


def test_compare_rejects_bad_dc(noisy):
    with pytest.raises(ValueError):
        compare(noisy, 0.0, GammaGap())


def test_compare_holds_strategy_fixed():
    ds, _ = gaussian_blobs([[0, 0], [5, 0], [0, 5]], 15, 0.6, seed=2)
    row = compare(ds, 0.3, TopK(3), kernel="cutoff")
    assert row.manual.n_clusters == row.datafield.n_clusters == 3
