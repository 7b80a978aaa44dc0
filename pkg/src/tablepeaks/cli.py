"""``tablepeaks`` command line.

Exit codes: 0 success, 1 I/O failure (unreadable or malformed input
files), 2 domain error (empty signal, undefined metric, bad configuration).
Errors are printed to stdout as a single JSON object
``{"error": ..., "kind": ...}``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import bench
from .errors import InputFormatError, TablePeaksError
from .evaluate import assign_words_to_cells, casa, read_truth
from .geometry import (BoundarySet, RegionPartition, boundaries_to_regions, infer_rows_from_words,
                       read_words, write_words)
from .mask_model import NoiseSpec, load_specs, read_mask, synth_mask, write_mask
from .pipeline import PipelineConfig, extract, write_signal_csv, write_trace
from .regularize import IterationSchedule
from .synth import add_noise, discretize_mixture, read_mixture_specs

log = logging.getLogger("tablepeaks")


def _floats(text):
    return [float(v) for v in text.replace(",", " ").split()]


def _size(text):
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None


def _emit(doc, out):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def config_from_args(args) -> PipelineConfig:
    config = PipelineConfig.load(args.config)
    schedule = None
    if args.theta_mult is not None or args.sigma is not None or args.iters is not None:
        base = config.schedule.steps
        mult = args.theta_mult if args.theta_mult is not None else [t for t, _ in base]
        sig = args.sigma if args.sigma is not None else [s for _, s in base]
        schedule = IterationSchedule.from_lists(mult, sig, args.iters, config.schedule.threshold_mode)
    resize = args.resize
    return config.with_overrides(binarize_threshold=args.binarize, resize=resize,
                                 resize_mode=args.resize_mode, intervals=args.intervals,
                                 epsilon=args.epsilon, schedule=schedule,
                                 semantics=args.semantics, gap_factor=args.gap_factor)


def cmd_extract(args) -> int:
    config = config_from_args(args)
    if config.unusual_pairing:
        log.warning("intervals=%s with semantics=%s is an unusual pairing",
                    config.intervals.value, config.region_semantics)
    mask = read_mask(args.mask, config.binarize_threshold)
    result = extract(mask, config, axis=args.axis)
    if args.trace:
        write_trace(args.trace, result)
    doc = result.to_dict()
    extent = result.boundaries.transform.axis(args.axis)[2]
    doc["intervals"] = [list(iv) for iv in boundaries_to_regions(result.boundaries, extent,
                                                                 config.region_semantics)]
    _emit(doc, args.out)
    return 0


def cmd_synth(args) -> int:
    grid, noise = load_specs(args.grid)
    if args.noise:
        noise = NoiseSpec.from_dict(json.loads(Path(args.noise).read_text()))
    if args.seed is not None:
        noise = NoiseSpec(noise.flip_probability, noise.dropout_probability, args.seed)
    mask, truth = synth_mask(grid, noise)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_mask(out / "mask.pgm", mask)
    truth_doc = truth.to_dict()
    truth_doc.update(column_centers=list(grid.column_centers), grid=grid.to_dict(), noise=noise.to_dict())
    if len(grid.row_boundaries) > 1:
        # simulated perfect-text word boxes, one line per row
        words, cells = bench.table_words(grid, np.random.default_rng(noise.seed))
        write_words(out / "words.jsonl", words)
        truth_doc["cells"] = [c.to_dict() for c in cells]
    (out / "truth.json").write_text(json.dumps(truth_doc, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_synth_density(args) -> int:
    spec, noise = read_mixture_specs(args.spec)
    if args.seed is not None:
        noise = type(noise)(noise.model, noise.amplitude, args.seed)
    clean = discretize_mixture(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_signal_csv(out / "clean.csv", clean)
    write_signal_csv(out / "noisy.csv", add_noise(clean, noise))
    return 0


def cmd_eval(args) -> int:
    words = read_words(args.words)
    truth = read_truth(args.truth)
    bdoc = json.loads(Path(args.boundaries).read_text())
    columns = BoundarySet.from_dict(bdoc)
    semantics = args.semantics or bdoc.get("semantics", "separators")
    width = args.width or max(c.x_max for c in truth)
    height = args.height or max(c.y_max for c in truth)
    if args.rows:
        rows = BoundarySet.from_dict(json.loads(Path(args.rows).read_text()))
    else:
        rows = infer_rows_from_words(words, args.gap_factor or PipelineConfig().gap_factor)
    partition = RegionPartition(boundaries_to_regions(columns, width, semantics),
                                boundaries_to_regions(rows, height, "separators"))
    report = casa(words, assign_words_to_cells(words, partition), truth)
    doc = report.to_dict()
    doc["partition"] = partition.to_dict()
    _emit(doc, args.out)
    if args.table:
        sys.stderr.write(report.to_table() + "\n")
    return 0


def cmd_bench(args) -> int:
    suite = bench.read_suite(args.suite) if args.suite else bench.SuiteConfig()
    if args.seed is not None:
        suite = bench.SuiteConfig.from_dict({**suite.to_dict(), "seed": args.seed})
    results = bench.run_suite(suite, workers=args.workers)
    text = bench.dumps_results(results)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(bench.format_table(results) + "\n")
    return 0


def _pipeline_flags(p):
    p.add_argument("--config", help="pipeline JSON config (default: $TABLEPEAKS_CONFIG)")
    p.add_argument("--binarize", type=int, help="intensity threshold 0-255 (default 128)")
    p.add_argument("--resize", type=_size, help="processing size WxH (default 1024x1024)")
    p.add_argument("--resize-mode", choices=["stretch", "pad"])
    p.add_argument("--intervals", choices=["all", "on", "off"])
    p.add_argument("--epsilon", type=float, help="initial smoothing width in bins (default 1)")
    p.add_argument("--iters", type=int)
    p.add_argument("--theta-mult", type=_floats, help="threshold multipliers, e.g. '1.5,1.0'")
    p.add_argument("--sigma", type=_floats, help="kernel sigmas in bins, e.g. '5,7'")
    p.add_argument("--semantics", choices=["centers", "separators"])
    p.add_argument("--gap-factor", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tablepeaks", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="boundary coordinates from a mask image")
    p.add_argument("mask")
    _pipeline_flags(p)
    p.add_argument("--axis", choices=["vertical", "horizontal"], default="vertical")
    p.add_argument("--trace", help="directory for per-iterate CSVs and summary.json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("synth", help="synthetic column mask, ground truth and (with rows) word boxes")
    p.add_argument("grid", help="JSON grid spec (may embed a 'noise' object)")
    p.add_argument("--noise", help="JSON noise spec")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("synth-density", help="discretized mixture + noisy realization as CSV")
    p.add_argument("spec", help="JSON with 'mixture' and 'noise' objects")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth_density)

    p = sub.add_parser("eval", help="CASA of boundaries against ground-truth cells")
    p.add_argument("boundaries")
    p.add_argument("words", help="JSON-lines word boxes")
    p.add_argument("truth", help="ground-truth cells JSON")
    p.add_argument("--rows", help="row BoundarySet JSON (default: infer from word boxes)")
    p.add_argument("--semantics", choices=["centers", "separators"])
    p.add_argument("--gap-factor", type=float)
    p.add_argument("--width", type=float)
    p.add_argument("--height", type=float)
    p.add_argument("--table", action="store_true", help="also print a table to stderr")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="seeded synthetic benchmark")
    p.add_argument("suite", nargs="?", help="suite JSON config")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputFormatError as exc:
        sys.stdout.write(json.dumps({"error": str(exc), "kind": exc.kind}) + "\n")
        return 1
    except TablePeaksError as exc:
        doc = {"error": str(exc), "kind": exc.kind}
        if getattr(exc, "iteration", None) is not None:
            doc["iteration"] = exc.iteration
        sys.stdout.write(json.dumps(doc) + "\n")
        return 2
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stdout.write(json.dumps({"error": str(exc), "kind": "io"}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
