"""Command line front end.

Subcommands:

* ``detect``     read a CSV series, optionally pre-whiten, run a detector
                 on the raw or derived series, report change points.
* ``transform``  emit the derived window-signature series as CSV.
* ``benchmark``  run a Monte Carlo sweep (preset or JSON spec) and write
                 MAE report tables.
* ``plot-data``  turn a saved detect artifact into plain CSV files ready
                 for plotting (series with markers and segment means,
                 per-window component counts around a split).

Every output file embeds the fully resolved configuration and seed in
``# key = json`` comment lines, so a run can be reproduced from any of
its outputs.  Files are written atomically (temp file then rename).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import cpd, simulate
from .embedding import DerivedSeries, tda_pipeline
from .errors import CsvParseError, InvalidInputError, TopoCpdError
from .prewhiten import ar_residuals, difference, fit_ar
from .series import TimeSeries
from .topology import ScaleGrid

LABEL_COLUMN_NAMES = {"t", "time", "index", "year", "date", "label"}
_PRE_PATTERN = re.compile(r"^(none|diff|ar:\d+)$")


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved end-to-end configuration of one detect/transform run."""

    window: int | None = None  # None: max(5, round(0.05 * length)) at run time
    grid_size: int = 50
    grid_step: float = 0.01
    pca_dim: int = 3
    detector: str = cpd.E_DIVISIVE
    series: str = "tda"  # "tda" | "raw"
    preprocessing: str = "none"  # "none" | "diff" | "ar:<p>"
    min_segment: int = 30
    k: int = 1
    alpha: float = 1.0
    center_offset: bool = False  # also shift mapped indices by (w - 1) // 2
    seed: int | None = None  # None: generated and printed at run time

    def __post_init__(self):
        if self.window is not None and self.window < 2:
            raise InvalidInputError(f"window must be >= 2, got {self.window}")
        if self.grid_size < 1 or self.grid_step <= 0:
            raise InvalidInputError("grid needs size >= 1 and step > 0")
        if self.pca_dim < 1:
            raise InvalidInputError("pca_dim must be >= 1")
        if self.detector not in cpd.DETECTORS:
            raise InvalidInputError(f"unknown detector {self.detector!r}")
        if self.series not in ("tda", "raw"):
            raise InvalidInputError(f"series must be 'tda' or 'raw', got {self.series!r}")
        if not _PRE_PATTERN.match(self.preprocessing):
            raise InvalidInputError(
                f"preprocessing must be none, diff, or ar:<p>, got {self.preprocessing!r}"
            )
        if self.min_segment < 2:
            raise InvalidInputError("min_segment must be >= 2")
        if self.k < 1:
            raise InvalidInputError("k must be >= 1")
        if not 0.0 < self.alpha < 2.0:
            raise InvalidInputError(f"alpha must be in (0, 2), got {self.alpha}")

    def grid(self) -> ScaleGrid:
        return ScaleGrid.uniform(self.grid_size, self.grid_step)


def default_window(length: int) -> int:
    """Default window width: 5 percent of the length, rounded, at least 5."""
    return max(5, round(0.05 * length))


def resolve_config(config: PipelineConfig, effective_length: int) -> PipelineConfig:
    """Fill in the run-time defaults (window width, seed)."""
    window = config.window
    if window is None:
        window = default_window(effective_length)
    seed = config.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2**32))
    return replace(config, window=window, seed=seed)


# ---------------------------------------------------------------------------
# CSV ingestion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IngestResult:
    series: TimeSeries
    labels: tuple[str, ...] | None
    value_columns: tuple[str, ...]


def ingest_csv(path: str, label_column: str | None = None) -> IngestResult:
    """Read a series from a CSV file with a header row.

    The header names the value columns; a leading time/label column is
    used for labels when its name (case-insensitive) is one of
    t, time, index, year, date, label, or when ``label_column`` names it
    explicitly.  Every value cell must be numeric and present; parse
    errors name the offending row and column.
    """
    with open(path, newline="") as fh:
        return _ingest_rows(csv.reader(fh), label_column, path)


def _ingest_rows(reader, label_column, origin) -> IngestResult:
    try:
        header = next(reader)
    except StopIteration:
        raise CsvParseError(f"{origin}: empty file, expected a header row")
    header = [h.strip() for h in header]
    if label_column is not None:
        if label_column not in header:
            raise CsvParseError(
                f"{origin}: label column {label_column!r} not in header {header}"
            )
        label_idx = header.index(label_column)
    elif header and header[0].lower() in LABEL_COLUMN_NAMES:
        label_idx = 0
    else:
        label_idx = None
    value_idx = [i for i in range(len(header)) if i != label_idx]
    if not value_idx:
        raise CsvParseError(f"{origin}: no value columns in header {header}")

    labels: list[str] = []
    rows: list[list[float]] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue  # tolerate blank lines
        if len(row) != len(header):
            raise CsvParseError(
                f"{origin}: row {lineno} has {len(row)} fields, expected {len(header)}"
            )
        values = []
        for i in value_idx:
            cell = row[i].strip()
            if cell == "":
                raise CsvParseError(
                    f"{origin}: row {lineno}, column {header[i]!r}: missing value"
                )
            try:
                values.append(float(cell))
            except ValueError:
                raise CsvParseError(
                    f"{origin}: row {lineno}, column {header[i]!r}: "
                    f"not a number: {cell!r}"
                )
        rows.append(values)
        if label_idx is not None:
            labels.append(row[label_idx].strip())
    if not rows:
        raise CsvParseError(f"{origin}: no data rows")
    return IngestResult(
        series=TimeSeries(np.asarray(rows)),
        labels=tuple(labels) if label_idx is not None else None,
        value_columns=tuple(header[i] for i in value_idx),
    )


# ---------------------------------------------------------------------------
# detect pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MappedChange:
    index_detected: int  # detector coordinates (derived or preprocessed)
    index_original: int  # coordinates of the ingested series
    label: str | None
    statistic: float
    p_value: float | None


@dataclass(frozen=True)
class DetectOutcome:
    config: PipelineConfig  # fully resolved
    result: cpd.DetectionResult
    changes: tuple[MappedChange, ...]
    preprocessed: TimeSeries
    preprocessing_offset: int
    derived: DerivedSeries | None
    betti_counts: np.ndarray | None


def apply_preprocessing(series: TimeSeries, preprocessing: str) -> tuple[TimeSeries, int]:
    """Apply the configured pre-whitening; returns (series, index offset).

    Entry i of the output corresponds to entry i + offset of the input.
    """
    if preprocessing == "none":
        return series, 0
    if preprocessing == "diff":
        return difference(series, 1), 1
    p = int(preprocessing.split(":", 1)[1])
    model = fit_ar(series, p)
    return ar_residuals(series, model), p


def map_index(index_detected: int, outcome_offset: int, config: PipelineConfig) -> int:
    """Map a detector-coordinate index back to the original series.

    Additive: the preprocessing offset, plus floor((w - 1) / 2) when the
    window-center sensitivity flag is on (off by default).
    """
    mapped = index_detected + outcome_offset
    if config.center_offset and config.series == "tda":
        mapped += (config.window - 1) // 2
    return mapped


def run_detect(
    series: TimeSeries,
    config: PipelineConfig,
    labels: tuple[str, ...] | None = None,
) -> DetectOutcome:
    """Run the configured detection pipeline on an ingested series."""
    pre, offset = apply_preprocessing(series, config.preprocessing)
    config = resolve_config(config, pre.length)

    betti_counts = None
    derived = None
    if config.series == "tda":
        if config.detector in (cpd.CVM, cpd.BARTLETT) and config.pca_dim != 1:
            raise InvalidInputError(
                f"detector {config.detector!r} is univariate; use pca_dim=1"
            )
        bm, _, derived = tda_pipeline(
            pre, config.window, config.grid(), config.pca_dim
        )
        betti_counts = bm.counts
        data = derived
    else:
        data = pre

    if config.detector == cpd.E_DIVISIVE:
        result = cpd.e_divisive(
            data,
            cpd.EnergyConfig(
                alpha=config.alpha, min_segment=config.min_segment, k=config.k
            ),
            seed=config.seed,
            series_kind=config.series,
        )
    else:
        if config.k != 1:
            raise InvalidInputError(
                f"detector {config.detector!r} locates a single change; use k=1"
            )
        if config.detector == cpd.CVM:
            result = cpd.cvm_single_change(
                data, min_segment=config.min_segment, series_kind=config.series
            )
        else:
            result = cpd.bartlett_single_change(
                data, min_segment=config.min_segment, series_kind=config.series
            )

    changes = []
    for i, tau in enumerate(result.change_points):
        original = map_index(tau, offset, config)
        label = None
        if labels is not None and 1 <= original <= len(labels):
            label = labels[original - 1]
        changes.append(
            MappedChange(
                index_detected=tau,
                index_original=original,
                label=label,
                statistic=result.statistics[i],
                p_value=result.p_values[i] if result.p_values else None,
            )
        )
    return DetectOutcome(
        config=config,
        result=result,
        changes=tuple(changes),
        preprocessed=pre,
        preprocessing_offset=offset,
        derived=derived,
        betti_counts=betti_counts,
    )


# ---------------------------------------------------------------------------
# file output
# ---------------------------------------------------------------------------

def atomic_write_text(path: str, text: str) -> None:
    """Write a file atomically: temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_csv(comments: dict, columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    for key, value in comments.items():
        buf.write(f"# {key} = {json.dumps(value, sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def read_embedded_comments(path: str) -> dict:
    """Parse the leading ``# key = json`` lines of an output file."""
    out = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("# "):
                break
            key, _, payload = line[2:].partition(" = ")
            out[key.strip()] = json.loads(payload)
    return out


def _config_comments(config: PipelineConfig) -> dict:
    return {"config": asdict(config), "seed": config.seed}


def write_detect_outputs(outcome: DetectOutcome, out_prefix: str,
                         series: TimeSeries, labels) -> list[str]:
    """Write the change point table and the JSON artifact; returns paths."""
    table = out_prefix + ".csv"
    rows = [
        [
            outcome.config.detector,
            outcome.config.series,
            c.index_detected,
            c.index_original,
            "" if c.label is None else c.label,
            f"{c.statistic:.6g}",
            "" if c.p_value is None else f"{c.p_value:.6g}",
        ]
        for c in outcome.changes
    ]
    atomic_write_text(
        table,
        render_csv(
            _config_comments(outcome.config),
            ["detector", "series_kind", "index_detected", "index_original",
             "label", "statistic", "p_value"],
            rows,
        ),
    )

    artifact = out_prefix + ".json"
    payload = {
        "kind": "detect",
        "config": asdict(outcome.config),
        "seed": outcome.config.seed,
        "series": {
            "values": series.values.tolist(),
            "labels": list(labels) if labels is not None else None,
        },
        "preprocessed": {
            "values": outcome.preprocessed.values.tolist(),
            "offset": outcome.preprocessing_offset,
        },
        "derived": None
        if outcome.derived is None
        else {
            "values": outcome.derived.values.tolist(),
            "window": outcome.derived.window,
            "grid": outcome.derived.grid.scales.tolist(),
            "pca_dim": outcome.derived.pca_dim,
        },
        "betti": None if outcome.betti_counts is None else outcome.betti_counts.tolist(),
        "result": {
            "detector": outcome.result.detector,
            "series_kind": outcome.result.series_kind,
            "changes": [
                {
                    "index_detected": c.index_detected,
                    "index_original": c.index_original,
                    "label": c.label,
                    "statistic": c.statistic,
                    "p_value": c.p_value,
                }
                for c in outcome.changes
            ],
        },
    }
    atomic_write_text(artifact, json.dumps(payload) + "\n")
    return [table, artifact]


def _segment_means(values: np.ndarray, boundaries: list[int]) -> np.ndarray:
    """Per-row segment mean; boundaries are 1-based first-of-new-regime."""
    T = values.shape[0]
    out = np.empty_like(values, dtype=np.float64)
    cuts = [1, *[b for b in boundaries if 1 < b <= T], T + 1]
    for a, b in zip(cuts[:-1], cuts[1:]):
        out[a - 1 : b - 1] = values[a - 1 : b - 1].mean(axis=0)
    return out


def write_plot_data(artifact_path: str, out_prefix: str, split: int | None = None) -> list[str]:
    """Expand a detect artifact into plain CSVs for plotting.

    Writes ``<prefix>_original.csv`` (always), ``<prefix>_derived.csv``
    and ``<prefix>_betti.csv`` (for runs that built a derived series).
    A benchmark report CSV passes through unchanged as
    ``<prefix>_benchmark.csv``.
    """
    if not artifact_path.endswith(".json"):
        with open(artifact_path) as fh:
            content = fh.read()
        out = out_prefix + "_benchmark.csv"
        atomic_write_text(out, content)
        return [out]

    with open(artifact_path) as fh:
        payload = json.load(fh)
    if payload.get("kind") != "detect":
        raise InvalidInputError(f"{artifact_path}: not a detect artifact")
    config = payload["config"]
    comments = {"config": config, "seed": payload["seed"]}
    written = []

    values = np.asarray(payload["series"]["values"])
    labels = payload["series"]["labels"]
    changes = payload["result"]["changes"]
    original_cps = [c["index_original"] for c in changes]
    means = _segment_means(values, original_cps)
    dim = values.shape[1]
    columns = ["index", "label"]
    columns += [f"y{j + 1}" for j in range(dim)]
    columns += [f"segment_mean{j + 1}" for j in range(dim)]
    columns += ["is_change"]
    rows = []
    for t in range(values.shape[0]):
        rows.append(
            [
                t + 1,
                labels[t] if labels else "",
                *[f"{v:.10g}" for v in values[t]],
                *[f"{v:.10g}" for v in means[t]],
                1 if (t + 1) in original_cps else 0,
            ]
        )
    path = out_prefix + "_original.csv"
    atomic_write_text(path, render_csv(comments, columns, rows))
    written.append(path)

    if payload["derived"] is not None:
        dvals = np.asarray(payload["derived"]["values"])
        detected_cps = [c["index_detected"] for c in changes]
        dmeans = _segment_means(dvals, detected_cps)
        m = dvals.shape[1]
        columns = ["index"]
        columns += [f"score{j + 1}" for j in range(m)]
        columns += [f"segment_mean{j + 1}" for j in range(m)]
        columns += ["is_change"]
        rows = []
        for t in range(dvals.shape[0]):
            rows.append(
                [
                    t + 1,
                    *[f"{v:.10g}" for v in dvals[t]],
                    *[f"{v:.10g}" for v in dmeans[t]],
                    1 if (t + 1) in detected_cps else 0,
                ]
            )
        path = out_prefix + "_derived.csv"
        atomic_write_text(path, render_csv(comments, columns, rows))
        written.append(path)

        betti = np.asarray(payload["betti"])
        pivot = split if split is not None else (
            detected_cps[0] if detected_cps else betti.shape[0] + 1
        )
        columns = ["window_origin", "side"] + [
            f"beta_{s:.4g}" for s in payload["derived"]["grid"]
        ]
        rows = [
            [t + 1, "pre" if t + 1 < pivot else "post", *betti[t].tolist()]
            for t in range(betti.shape[0])
        ]
        path = out_prefix + "_betti.csv"
        atomic_write_text(path, render_csv(comments, columns, rows))
        written.append(path)
    return written


def write_transform_output(
    outcome_config: PipelineConfig, derived: DerivedSeries, out_path: str
) -> None:
    columns = ["index"] + [f"score{j + 1}" for j in range(derived.values.shape[1])]
    rows = [
        [t + 1, *[f"{v:.10g}" for v in derived.values[t]]]
        for t in range(derived.length)
    ]
    atomic_write_text(
        out_path, render_csv(_config_comments(outcome_config), columns, rows)
    )


def write_benchmark_outputs(
    reports: list[simulate.BenchmarkReport],
    skipped: list[simulate.SkippedCell],
    sweep: dict,
    out_dir: str,
) -> list[str]:
    """One CSV per scenario plus a combined table and the skip log."""
    comments = {"sweep": sweep}
    written = []
    by_scenario: dict[str, list[simulate.BenchmarkReport]] = {}
    for r in reports:
        by_scenario.setdefault(r.scenario, []).append(r)
    for name, rs in by_scenario.items():
        path = os.path.join(out_dir, f"{name}.csv")
        atomic_write_text(
            path,
            render_csv(
                comments,
                list(simulate.REPORT_COLUMNS),
                [simulate.report_row(r) for r in rs],
            ),
        )
        written.append(path)
    combined = os.path.join(out_dir, "combined.csv")
    atomic_write_text(
        combined,
        render_csv(
            comments,
            list(simulate.REPORT_COLUMNS),
            [simulate.report_row(r) for r in reports],
        ),
    )
    written.append(combined)
    if skipped:
        path = os.path.join(out_dir, "skipped.csv")
        atomic_write_text(
            path,
            render_csv(
                comments,
                ["scenario", "cell", "reason"],
                [[s.scenario, s.description, s.reason] for s in skipped],
            ),
        )
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=int, default=None,
                   help="window width (default: 5%% of the length, min 5)")
    p.add_argument("--grid-size", type=int, default=50, help="number of scales")
    p.add_argument("--grid-step", type=float, default=0.01, help="scale spacing")
    p.add_argument("--pca", type=int, default=3, dest="pca_dim",
                   help="derived coordinates to keep")
    p.add_argument("--pre", default="none",
                   help="preprocessing: none, diff, or ar:<p>")
    p.add_argument("--seed", type=int, default=None,
                   help="random seed (default: generated and printed)")
    p.add_argument("--label-col", default=None,
                   help="name of the label column (default: auto-detect)")
    p.add_argument("--config", default=None,
                   help="JSON file with configuration keys; flags override")


def _config_from_args(args) -> PipelineConfig:
    base: dict = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            base = json.load(fh)
        if not isinstance(base, dict):
            raise InvalidInputError(f"{args.config}: config file must hold an object")
    overrides = {
        "window": args.window,
        "grid_size": args.grid_size,
        "grid_step": args.grid_step,
        "pca_dim": args.pca_dim,
        "preprocessing": args.pre,
        "seed": args.seed,
    }
    for attr, key in (
        ("detector", "detector"),
        ("series", "series"),
        ("k", "k"),
        ("min_segment", "min_segment"),
        ("alpha", "alpha"),
        ("center_offset", "center_offset"),
    ):
        if hasattr(args, attr):
            overrides[key] = getattr(args, attr)
    parser_defaults = {
        "window": None, "grid_size": 50, "grid_step": 0.01, "pca_dim": 3,
        "preprocessing": "none", "seed": None, "detector": cpd.E_DIVISIVE,
        "series": "tda", "k": 1, "min_segment": 30, "alpha": 1.0,
        "center_offset": False,
    }
    merged = dict(parser_defaults)
    merged.update({k: v for k, v in base.items() if k in parser_defaults})
    # a flag that differs from the parser default always wins over the file
    merged.update(
        {k: v for k, v in overrides.items() if v != parser_defaults.get(k)}
    )
    return PipelineConfig(**merged)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topocpd",
        description="Topology-enhanced nonparametric change point detection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("detect", help="detect change points in a CSV series")
    d.add_argument("input", help="CSV file with a header row")
    _add_pipeline_flags(d)
    d.add_argument("--detector", choices=cpd.DETECTORS, default=cpd.E_DIVISIVE)
    d.add_argument("--series", choices=["tda", "raw"], default="tda",
                   help="run the detector on the derived or the raw series")
    d.add_argument("--k", type=int, default=1, help="number of change points")
    d.add_argument("--min-segment", type=int, default=30, dest="min_segment")
    d.add_argument("--alpha", type=float, default=1.0)
    d.add_argument("--center-offset", action="store_true", dest="center_offset",
                   help="shift mapped indices by half a window (sensitivity check)")
    d.add_argument("--out", default=None, help="output prefix (.csv and .json)")

    t = sub.add_parser("transform", help="emit the derived series as CSV")
    t.add_argument("input", help="CSV file with a header row")
    _add_pipeline_flags(t)
    t.add_argument("--out", required=True, help="output CSV path")

    b = sub.add_parser("benchmark", help="run a Monte Carlo sweep")
    spec = b.add_mutually_exclusive_group(required=True)
    spec.add_argument("--spec", help="JSON sweep specification file")
    spec.add_argument("--preset", choices=sorted(simulate.PRESETS),
                      help="built-in sweep")
    b.add_argument("--replications", type=int, default=None,
                   help="override the sweep's replication count")
    b.add_argument("--seed", type=int, default=None, help="override the sweep's seed")
    b.add_argument("--out", required=True, help="output directory")

    pl = sub.add_parser("plot-data", help="expand a run artifact into plot CSVs")
    pl.add_argument("artifact", help="detect .json artifact or benchmark report CSV")
    pl.add_argument("--split", type=int, default=None,
                    help="derived-coordinate index separating pre from post windows")
    pl.add_argument("--out", required=True, help="output prefix")
    return parser


def _cmd_detect(args) -> int:
    ingest = ingest_csv(args.input, args.label_col)
    config = _config_from_args(args)
    outcome = run_detect(ingest.series, config, ingest.labels)
    print(f"seed: {outcome.config.seed}")
    for c in outcome.changes:
        label = f" ({c.label})" if c.label else ""
        pv = f", p={c.p_value:.4g}" if c.p_value is not None else ""
        print(
            f"change at index {c.index_original}{label} "
            f"[detector coordinate {c.index_detected}], "
            f"statistic {c.statistic:.6g}{pv}"
        )
    if args.out:
        for path in write_detect_outputs(outcome, args.out, ingest.series, ingest.labels):
            print(f"wrote {path}")
    return 0


def _cmd_transform(args) -> int:
    ingest = ingest_csv(args.input, args.label_col)
    config = _config_from_args(args)
    pre, _ = apply_preprocessing(ingest.series, config.preprocessing)
    config = resolve_config(config, pre.length)
    _, _, derived = tda_pipeline(pre, config.window, config.grid(), config.pca_dim)
    write_transform_output(config, derived, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_benchmark(args) -> int:
    if args.spec:
        with open(args.spec) as fh:
            sweep = json.load(fh)
    else:
        sweep = {"preset": args.preset}
    reports, skipped = simulate.run_sweep(sweep, args.replications, args.seed)
    resolved = dict(sweep)
    if args.replications is not None:
        resolved["replications"] = args.replications
    if args.seed is not None:
        resolved["seed"] = args.seed
    for path in write_benchmark_outputs(reports, skipped, resolved, args.out):
        print(f"wrote {path}")
    for s in skipped:
        print(f"skipped {s.scenario} [{s.description}]: {s.reason}")
    return 0


def _cmd_plot_data(args) -> int:
    for path in write_plot_data(args.artifact, args.out, args.split):
        print(f"wrote {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "detect": _cmd_detect,
        "transform": _cmd_transform,
        "benchmark": _cmd_benchmark,
        "plot-data": _cmd_plot_data,
    }
    try:
        return handlers[args.command](args)
    except (TopoCpdError, OSError, json.JSONDecodeError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
