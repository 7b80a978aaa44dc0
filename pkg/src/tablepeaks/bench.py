"""Seeded synthetic-table benchmark: boundary recovery and CASA against a naive split.

Each instance is a :class:`GridSpec` plus pixel noise, rendered to a column
mask, and a matching set of word boxes laid out one text line per row.
Instances are generated from ``(suite seed, instance id)`` so results do not
depend on evaluation order.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, EmptySignalError
from .evaluate import GroundTruthCell, assign_words_to_cells, boundary_recovery, casa
from .geometry import BoundarySet, RegionPartition, WordBox, boundaries_to_regions, infer_rows_from_words
from .mask_model import GridSpec, NoiseSpec, synth_mask
from .pipeline import PipelineConfig, extract

VOCAB = ("total", "net", "rate", "mean", "cost", "Q1", "Q2", "n/a", "yes", "no", "alpha", "beta",
         "model", "score", "count", "%", "index", "value", "group", "year")
LINE_HEIGHT = 14.0
MARGIN = 16


@dataclass(frozen=True)
class SuiteConfig:
    instances: int = 50
    seed: int = 0
    image_size: tuple = (1024, 1024)
    columns: tuple = (2, 8)
    band_half_width: tuple = (20, 60)
    flip_probability: tuple = (0.0, 0.05)
    dropout_probability: tuple = (0.0, 0.1)
    rows: tuple = (3, 8)
    tolerance: float = 5.0
    casa: bool = True
    pipeline: dict = field(default_factory=lambda: {"intervals": "on"})

    def __post_init__(self):
        w, h = (int(v) for v in self.image_size)
        object.__setattr__(self, "image_size", (w, h))
        if w < 1 or h < 1:
            raise ConfigurationError("image_size must be at least 1x1")
        for name in ("columns", "band_half_width", "flip_probability", "dropout_probability", "rows"):
            lo, hi = getattr(self, name)
            object.__setattr__(self, name, (lo, hi))
            if lo > hi:
                raise ConfigurationError(f"{name}: lower bound exceeds upper bound")
        if self.instances < 1:
            raise ConfigurationError("instances must be >= 1")
        if self.columns[0] < 1:
            raise ConfigurationError("need at least one column")

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigurationError(f"unknown suite keys: {sorted(unknown)}")
        return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in d.items()})

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v
                for k, v in self.__dict__.items()}

    @property
    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig.from_dict(self.pipeline)


@dataclass(frozen=True)
class Instance:
    id: int
    grid: GridSpec
    noise: NoiseSpec
    words: tuple
    cells: tuple


def make_instance(suite: SuiteConfig, instance_id: int) -> Instance:
    rng = np.random.default_rng([suite.seed, instance_id])
    width, height = suite.image_size
    k = int(rng.integers(suite.columns[0], suite.columns[1] + 1))
    h = int(rng.integers(suite.band_half_width[0], suite.band_half_width[1] + 1))
    avail = width - 2 * MARGIN
    # every column region must be wider than its band (plus rounding slack)
    h = min(h, int((avail / k - 4) // 2))
    if h < 1:
        raise ConfigurationError(f"{k} columns do not fit in width {width}")
    base = 2 * h + 4
    widths = base + rng.dirichlet(np.ones(k)) * (avail - k * base)
    cols = np.round(MARGIN + np.r_[0.0, np.cumsum(widths)])

    n_rows = int(rng.integers(suite.rows[0], suite.rows[1] + 1))
    row_h = (height - 2 * MARGIN) / n_rows
    row_heights = row_h * rng.uniform(0.7, 1.0, n_rows)
    rows = np.round(MARGIN + np.r_[0.0, np.cumsum(row_heights)])

    grid = GridSpec(width, height, tuple(cols), tuple(rows), float(h))
    noise = NoiseSpec(float(rng.uniform(*suite.flip_probability)),
                      float(rng.uniform(*suite.dropout_probability)),
                      int(rng.integers(2**31)))
    words, cells = table_words(grid, rng)
    return Instance(instance_id, grid, noise, tuple(words), tuple(cells))


def table_words(grid: GridSpec, rng):
    """One text line per row; each cell holds 1-3 words inside its column band."""
    words, cells = [], []
    centers = grid.column_centers
    h = grid.band_half_width
    rows = grid.row_boundaries
    for r, (top, bottom) in enumerate(zip(rows[:-1], rows[1:])):
        mid = (top + bottom) / 2 + rng.uniform(-2, 2)
        y0, y1 = mid - LINE_HEIGHT / 2, mid + LINE_HEIGHT / 2
        for c, cx in enumerate(centers):
            n = int(rng.integers(1, 4))
            slot = 2 * h / n
            texts = []
            for j in range(n):
                text = str(rng.choice(VOCAB)) if rng.random() < 0.6 else str(int(rng.integers(0, 10**4)))
                x0 = cx - h + j * slot + 0.1 * slot
                words.append(WordBox(text, float(x0), float(y0), float(x0 + 0.8 * slot), float(y1)))
                texts.append(text)
            cells.append(GroundTruthCell(r, c, grid.column_boundaries[c], top,
                                         grid.column_boundaries[c + 1], bottom, tuple(texts)))
    return words, cells


def _casa_for_columns(inst: Instance, column_intervals, row_intervals) -> float:
    partition = RegionPartition(column_intervals, row_intervals)
    return casa(inst.words, assign_words_to_cells(inst.words, partition), inst.cells).casa_percent


def naive_column_intervals(width: float, n: int) -> tuple:
    edges = [width * j / n for j in range(n + 1)]
    return tuple(zip(edges[:-1], edges[1:]))


def run_instance(suite: SuiteConfig, instance_id: int) -> dict:
    inst = make_instance(suite, instance_id)
    config = suite.pipeline_config
    mask, _ = synth_mask(inst.grid, inst.noise)
    truth = BoundarySet("vertical", inst.grid.column_centers)
    result = {"id": instance_id, "columns": inst.grid.n_columns,
              "band_half_width": inst.grid.band_half_width,
              "flip_probability": inst.noise.flip_probability,
              "dropout_probability": inst.noise.dropout_probability,
              "truth": list(truth.coordinates), "error": None}
    try:
        predicted = extract(mask, config).boundaries
    except EmptySignalError as exc:
        predicted = BoundarySet("vertical", ())
        result["error"] = str(exc)
    # compare like with like: separators are scored against column boundaries
    if config.region_semantics == "separators":
        truth = BoundarySet("vertical", inst.grid.column_boundaries)
        result["truth"] = list(truth.coordinates)
    precision, recall, mae = boundary_recovery(predicted, truth, suite.tolerance)
    matched = round(recall * len(truth))
    result.update(predicted=list(predicted.coordinates), precision=precision, recall=recall,
                  mae=mae, matched=matched)
    if suite.casa:
        width, height = inst.grid.image_width, inst.grid.image_height
        rows = boundaries_to_regions(infer_rows_from_words(inst.words, config.gap_factor),
                                     height, "separators")
        cols = boundaries_to_regions(predicted, width, config.region_semantics)
        result["casa_pipeline"] = _casa_for_columns(inst, cols, rows)
        result["casa_baseline"] = _casa_for_columns(inst, naive_column_intervals(width, inst.grid.n_columns), rows)
    return result


def _aggregate(results, suite: SuiteConfig) -> dict:
    matched = sum(r["matched"] for r in results)
    n_pred = sum(len(r["predicted"]) for r in results)
    n_truth = sum(len(r["truth"]) for r in results)
    abs_err = sum(r["mae"] * r["matched"] for r in results if r["mae"] is not None)
    agg = {"instances": len(results),
           "precision": matched / n_pred if n_pred else 1.0,
           "recall": matched / n_truth if n_truth else 1.0,
           "mae": abs_err / matched if matched else None,
           "errors": sum(r["error"] is not None for r in results)}
    if suite.casa:
        pipe = np.array([r["casa_pipeline"] for r in results])
        base = np.array([r["casa_baseline"] for r in results])
        agg.update(casa_pipeline_mean=float(pipe.mean()), casa_baseline_mean=float(base.mean()),
                   casa_win_fraction=float(np.mean(pipe > base)))
    return agg


def _run_one(args):
    return run_instance(*args)


def run_suite(suite: SuiteConfig, workers: int = 1) -> dict:
    """Evaluate every instance; results are ordered by instance id."""
    jobs = [(suite, i) for i in range(suite.instances)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    return {"suite": suite.to_dict(), "aggregate": _aggregate(results, suite), "instances": results}


def dumps_results(results: dict) -> str:
    return json.dumps(results, indent=2, sort_keys=True) + "\n"


def format_table(results: dict) -> str:
    agg = results["aggregate"]
    lines = [f"{'id':>4} {'cols':>4} {'flip':>7} {'drop':>6} {'prec':>6} {'rec':>6} {'mae':>6}"
             + ("  casa_pipe casa_base" if "casa_pipeline_mean" in agg else "")]
    for r in results["instances"]:
        mae = "-" if r["mae"] is None else f"{r['mae']:.2f}"
        line = (f"{r['id']:>4} {r['columns']:>4} {r['flip_probability']:>7.4f} {r['dropout_probability']:>6.3f}"
                f" {r['precision']:>6.3f} {r['recall']:>6.3f} {mae:>6}")
        if "casa_pipeline" in r:
            line += f"  {r['casa_pipeline']:>9.2f} {r['casa_baseline']:>9.2f}"
        lines.append(line)
    mae = "-" if agg["mae"] is None else f"{agg['mae']:.3f}"
    lines.append(f"precision={agg['precision']:.4f} recall={agg['recall']:.4f} mae={mae}")
    if "casa_pipeline_mean" in agg:
        lines.append(f"casa pipeline={agg['casa_pipeline_mean']:.2f} baseline={agg['casa_baseline_mean']:.2f}"
                     f" win_fraction={agg['casa_win_fraction']:.2f}")
    return "\n".join(lines)


def read_suite(path) -> SuiteConfig:
    return SuiteConfig.from_dict(json.loads(Path(path).read_text()))
