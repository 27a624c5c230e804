import json
import os
from dataclasses import asdict, replace

import numpy as np
import pytest

from topocpd import cli, cpd
from topocpd.cli import (
    PipelineConfig,
    apply_preprocessing,
    atomic_write_text,
    default_window,
    ingest_csv,
    read_embedded_comments,
    render_csv,
    resolve_config,
    run_detect,
    write_detect_outputs,
    write_plot_data,
)
from topocpd.errors import CsvParseError, InvalidInputError
from topocpd.series import TimeSeries

FIXTURE = os.path.join(os.path.dirname(__file__), "fixtures", "step_years.csv")


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# --- ingestion ------------------------------------------------------------------


def test_ingest_year_column_becomes_labels(tmp_path):
    path = write(tmp_path, "a.csv", "t,v\n1869,134\n1870,141\n")
    out = ingest_csv(path)
    assert out.series.length == 2
    assert out.series.dimension == 1
    assert out.labels == ("1869", "1870")
    assert out.value_columns == ("v",)


def test_ingest_all_value_columns(tmp_path):
    path = write(tmp_path, "b.csv", "a,b,c\n1,2,3\n4,5,6\n")
    out = ingest_csv(path)
    assert out.series.dimension == 3
    assert out.labels is None
    assert np.array_equal(out.series.values, [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])


def test_ingest_explicit_label_column(tmp_path):
    path = write(tmp_path, "c.csv", "obs,v\nx,1\ny,2\n")
    out = ingest_csv(path, label_column="obs")
    assert out.labels == ("x", "y")
    with pytest.raises(CsvParseError, match="'missing'"):
        ingest_csv(path, label_column="missing")


def test_ingest_ragged_row_cites_line_number(tmp_path):
    path = write(tmp_path, "d.csv", "t,v\n1,2\n3\n")
    with pytest.raises(CsvParseError, match="row 3"):
        ingest_csv(path)


def test_ingest_bad_cells_cite_row_and_column(tmp_path):
    path = write(tmp_path, "e.csv", "t,v\n1,\n")
    with pytest.raises(CsvParseError, match="row 2.*'v'.*missing"):
        ingest_csv(path)
    path = write(tmp_path, "f.csv", "t,v\n1,abc\n")
    with pytest.raises(CsvParseError, match="row 2.*'v'.*not a number"):
        ingest_csv(path)


def test_ingest_degenerate_files(tmp_path):
    with pytest.raises(CsvParseError, match="empty file"):
        ingest_csv(write(tmp_path, "g.csv", ""))
    with pytest.raises(CsvParseError, match="no data rows"):
        ingest_csv(write(tmp_path, "h.csv", "t,v\n"))
    with pytest.raises(CsvParseError, match="no value columns"):
        ingest_csv(write(tmp_path, "i.csv", "t\n1\n"))


def test_ingest_tolerates_blank_lines(tmp_path):
    path = write(tmp_path, "j.csv", "v\n1\n\n2\n")
    assert ingest_csv(path).series.length == 2


# --- configuration -----------------------------------------------------------------


def test_default_window_rule():
    assert default_window(200) == 10
    assert default_window(40) == 5  # floor of 5
    assert default_window(1000) == 50


def test_resolve_config_fills_window_and_seed():
    resolved = resolve_config(PipelineConfig(), 200)
    assert resolved.window == 10
    assert resolved.seed is not None
    pinned = resolve_config(PipelineConfig(window=7, seed=3), 200)
    assert (pinned.window, pinned.seed) == (7, 3)


def test_config_validation():
    with pytest.raises(InvalidInputError):
        PipelineConfig(detector="welch")
    with pytest.raises(InvalidInputError):
        PipelineConfig(series="derived")
    with pytest.raises(InvalidInputError):
        PipelineConfig(preprocessing="ar")
    with pytest.raises(InvalidInputError):
        PipelineConfig(alpha=2.0)
    with pytest.raises(InvalidInputError):
        PipelineConfig(window=1)


# --- detect pipeline ----------------------------------------------------------------


def test_raw_detect_equals_direct_detector_call():
    rng = np.random.default_rng(0)
    y = np.concatenate([rng.normal(size=80), rng.normal(3.0, 1.0, size=80)])
    series = TimeSeries(y)
    config = PipelineConfig(series="raw", detector=cpd.E_DIVISIVE, min_segment=20, seed=0)
    outcome = run_detect(series, config)
    direct = cpd.e_divisive(y, cpd.EnergyConfig(min_segment=20, k=1))
    assert outcome.result.change_points == direct.change_points
    assert outcome.changes[0].index_original == direct.change_points[0]

    config = replace(config, detector=cpd.CVM)
    assert run_detect(series, config).result.change_points == cpd.cvm_single_change(
        y, min_segment=20
    ).change_points


def test_detect_univariate_detectors_constrained_on_derived_series():
    series = TimeSeries(np.random.default_rng(1).normal(size=200))
    with pytest.raises(InvalidInputError, match="pca_dim=1"):
        run_detect(series, PipelineConfig(detector=cpd.CVM, seed=0))
    with pytest.raises(InvalidInputError, match="k=1"):
        run_detect(series, PipelineConfig(detector=cpd.CVM, pca_dim=1, k=2, seed=0))


def test_detect_maps_indices_through_preprocessing():
    ingest = ingest_csv(FIXTURE)
    config = PipelineConfig(series="raw", preprocessing="ar:2", min_segment=30, seed=0)
    outcome = run_detect(ingest.series, config, ingest.labels)
    change = outcome.changes[0]
    assert outcome.preprocessing_offset == 2
    assert change.index_original == change.index_detected + 2
    assert change.label == ingest.labels[change.index_original - 1]

    config = PipelineConfig(series="raw", preprocessing="diff", min_segment=30, seed=0)
    outcome = run_detect(ingest.series, config, ingest.labels)
    assert outcome.changes[0].index_original == outcome.changes[0].index_detected + 1


def test_detect_window_center_flag_shifts_derived_indices():
    ingest = ingest_csv(FIXTURE)
    base = run_detect(ingest.series, PipelineConfig(window=10, seed=0), ingest.labels)
    shifted = run_detect(
        ingest.series,
        PipelineConfig(window=10, center_offset=True, seed=0),
        ingest.labels,
    )
    assert base.changes[0].index_original == base.changes[0].index_detected
    assert (
        shifted.changes[0].index_original
        == shifted.changes[0].index_detected + 4  # (10 - 1) // 2
    )


def test_detect_fixture_golden_run():
    ingest = ingest_csv(FIXTURE)
    config = PipelineConfig(series="raw", detector=cpd.E_DIVISIVE, seed=0)
    outcome = run_detect(ingest.series, config, ingest.labels)
    assert outcome.changes[0].index_original == 101
    assert outcome.changes[0].label == "2000"


def test_apply_preprocessing_offsets():
    series = TimeSeries(np.random.default_rng(2).normal(size=50))
    same, off = apply_preprocessing(series, "none")
    assert off == 0 and same is series
    diffed, off = apply_preprocessing(series, "diff")
    assert off == 1 and diffed.length == 49
    resid, off = apply_preprocessing(series, "ar:3")
    assert off == 3 and resid.length == 47


# --- file output -----------------------------------------------------------------


def test_atomic_write_creates_directories(tmp_path):
    target = tmp_path / "deep" / "nested" / "out.txt"
    atomic_write_text(str(target), "payload")
    assert target.read_text() == "payload"
    assert not [p for p in target.parent.iterdir() if p.name.startswith(".tmp-")]


def test_embedded_comment_round_trip(tmp_path):
    text = render_csv({"config": {"a": 1}, "seed": 7}, ["x"], [[1], [2]])
    path = write(tmp_path, "k.csv", text)
    comments = read_embedded_comments(path)
    assert comments == {"config": {"a": 1}, "seed": 7}
    lines = text.splitlines()
    assert lines[2] == "x"
    assert lines[3:] == ["1", "2"]


def test_detect_outputs_round_trip(tmp_path):
    ingest = ingest_csv(FIXTURE)
    config = PipelineConfig(window=10, seed=11)
    outcome = run_detect(ingest.series, config, ingest.labels)
    prefix = str(tmp_path / "run")
    table, artifact = write_detect_outputs(outcome, prefix, ingest.series, ingest.labels)
    comments = read_embedded_comments(table)
    assert comments["config"] == asdict(outcome.config)
    assert comments["seed"] == 11

    payload = json.loads(open(artifact).read())
    assert payload["kind"] == "detect"
    assert payload["config"]["window"] == 10
    assert len(payload["series"]["values"]) == 200
    assert len(payload["derived"]["values"]) == 191
    assert len(payload["betti"]) == 191
    assert len(payload["betti"][0]) == 50
    assert payload["result"]["changes"][0]["index_original"] == (
        outcome.changes[0].index_original
    )


def test_plot_data_expansion(tmp_path):
    ingest = ingest_csv(FIXTURE)
    outcome = run_detect(ingest.series, PipelineConfig(window=10, seed=5), ingest.labels)
    prefix = str(tmp_path / "run")
    _, artifact = write_detect_outputs(outcome, prefix, ingest.series, ingest.labels)

    written = write_plot_data(artifact, str(tmp_path / "plot"))
    assert [os.path.basename(p) for p in written] == [
        "plot_original.csv",
        "plot_derived.csv",
        "plot_betti.csv",
    ]
    original = [l for l in open(written[0]) if not l.startswith("#")]
    assert len(original) == 1 + 200  # header + every observation
    assert original[0].strip() == "index,label,y1,segment_mean1,is_change"
    assert sum(l.split(",")[-1].strip() == "1" for l in original[1:]) == 1

    derived = [l for l in open(written[1]) if not l.startswith("#")]
    assert len(derived) == 1 + 191
    betti = [l for l in open(written[2]) if not l.startswith("#")]
    assert len(betti) == 1 + 191
    assert len(betti[0].split(",")) == 2 + 50
    sides = {l.split(",")[1] for l in betti[1:]}
    assert sides == {"pre", "post"}


def test_plot_data_benchmark_passthrough(tmp_path):
    src = write(tmp_path, "combined.csv", "# sweep = {}\na,b\n1,2\n")
    out = write_plot_data(src, str(tmp_path / "bench"))
    assert out == [str(tmp_path / "bench_benchmark.csv")]
    assert open(out[0]).read() == "# sweep = {}\na,b\n1,2\n"


def test_plot_data_rejects_foreign_json(tmp_path):
    path = write(tmp_path, "other.json", json.dumps({"kind": "transform"}))
    with pytest.raises(InvalidInputError, match="not a detect artifact"):
        write_plot_data(path, str(tmp_path / "x"))


# --- command line ------------------------------------------------------------------


def test_cli_detect_end_to_end(tmp_path, capsys):
    prefix = str(tmp_path / "out")
    code = cli.main(
        ["detect", FIXTURE, "--series", "raw", "--seed", "3", "--out", prefix]
    )
    assert code == 0
    printed = capsys.readouterr().out
    assert "change at index 101 (2000)" in printed
    assert os.path.exists(prefix + ".csv")
    assert os.path.exists(prefix + ".json")


def test_cli_transform_end_to_end(tmp_path, capsys):
    out = str(tmp_path / "derived.csv")
    code = cli.main(["transform", FIXTURE, "--window", "10", "--pca", "2", "--out", out])
    assert code == 0
    rows = [l for l in open(out) if not l.startswith("#")]
    assert rows[0].strip() == "index,score1,score2"
    assert len(rows) == 1 + 191


def test_cli_benchmark_with_spec_file(tmp_path, capsys):
    spec = {
        "scenarios": [
            {
                "name": "noiseless",
                "length": 140,
                "segments": [
                    {"kind": "normal", "mu": 0, "scale": 0},
                    {"kind": "normal", "mu": 5, "scale": 0},
                ],
                "change_points": [71],
            }
        ],
        "series": ["raw"],
        "detectors": ["e-divisive"],
        "min_segment": 20,
        "replications": 2,
        "seed": 1,
    }
    spec_path = write(tmp_path, "sweep.json", json.dumps(spec))
    out_dir = str(tmp_path / "bench")
    code = cli.main(["benchmark", "--spec", spec_path, "--out", out_dir])
    assert code == 0
    combined = os.path.join(out_dir, "combined.csv")
    assert os.path.exists(os.path.join(out_dir, "noiseless.csv"))
    comments = read_embedded_comments(combined)
    assert comments["sweep"]["seed"] == 1
    rows = [l for l in open(combined) if not l.startswith("#")]
    assert len(rows) == 2  # header + one cell
    assert ",0.0000," in rows[1]  # exact localization on the noiseless step


def test_cli_benchmark_preset_smoke(tmp_path):
    out_dir = str(tmp_path / "bench")
    code = cli.main(
        ["benchmark", "--preset", "table1", "--replications", "1", "--seed", "0",
         "--out", out_dir]
    )
    assert code == 0
    rows = [
        l for l in open(os.path.join(out_dir, "combined.csv")) if not l.startswith("#")
    ]
    assert len(rows) == 1 + 31
    skipped = [
        l for l in open(os.path.join(out_dir, "skipped.csv")) if not l.startswith("#")
    ]
    assert len(skipped) == 1 + 1
    assert "mvnormal-correlation" in skipped[1]


def test_cli_errors_exit_code_and_json_line(tmp_path, capsys):
    code = cli.main(["detect", str(tmp_path / "missing.csv")])
    assert code == 2
    err = capsys.readouterr().err.strip()
    payload = json.loads(err)
    assert payload["error"] == "FileNotFoundError"
    assert "missing.csv" in payload["message"]


def test_cli_config_file_with_flag_override(tmp_path, capsys):
    config_path = write(tmp_path, "conf.json", json.dumps({"window": 12, "pca_dim": 2}))
    out = str(tmp_path / "d.csv")
    code = cli.main(
        ["transform", FIXTURE, "--config", config_path, "--window", "15", "--out", out]
    )
    assert code == 0
    comments = read_embedded_comments(out)
    assert comments["config"]["window"] == 15  # flag wins
    assert comments["config"]["pca_dim"] == 2  # file fills the rest
