"""End-to-end composition: mask -> density -> regularized modes -> image coordinates."""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .accumulate import (DEFAULT_EPSILON, IntervalSelection, accumulate_histogram, normalize,
                         smooth_initial)
from .errors import ConfigurationError
from .geometry import DEFAULT_GAP_FACTOR, SEMANTICS, BoundarySet, peaks_to_coordinates
from .mask_model import (DEFAULT_BINARIZE_THRESHOLD, RESIZE_MODES, GeometryTransform, resize_mask,
                         transpose)
from .regularize import IterationSchedule, RegularizationTrace, energy, iterate

CONFIG_ENV = "TABLEPEAKS_CONFIG"

# on-runs give column-body midpoints (centres); gap or all-interval midpoints read as separators
PAIRED_SEMANTICS = {IntervalSelection.ON: "centers", IntervalSelection.OFF: "separators",
                    IntervalSelection.ALL: "separators"}


@dataclass(frozen=True)
class PipelineConfig:
    binarize_threshold: int = DEFAULT_BINARIZE_THRESHOLD
    resize: tuple | None = (1024, 1024)
    resize_mode: str = "stretch"
    intervals: IntervalSelection = IntervalSelection.ALL
    epsilon: float = DEFAULT_EPSILON
    schedule: IterationSchedule = field(default_factory=IterationSchedule)
    semantics: str | None = None
    gap_factor: float = DEFAULT_GAP_FACTOR

    def __post_init__(self):
        object.__setattr__(self, "intervals", IntervalSelection.parse(self.intervals))
        if self.resize is not None:
            w, h = (int(v) for v in self.resize)
            if w < 1 or h < 1:
                raise ConfigurationError("resize target must be >= 1x1")
            object.__setattr__(self, "resize", (w, h))
        if self.resize_mode not in RESIZE_MODES:
            raise ConfigurationError(f"resize mode must be one of {RESIZE_MODES}")
        if not 0 <= self.binarize_threshold <= 255:
            raise ConfigurationError("binarize threshold must lie in 0..255")
        if not self.epsilon > 0:
            raise ConfigurationError("epsilon must be positive")
        if self.semantics is not None and self.semantics not in SEMANTICS:
            raise ConfigurationError(f"semantics must be one of {SEMANTICS}")
        if not self.gap_factor > 0:
            raise ConfigurationError("gap_factor must be positive")

    @property
    def region_semantics(self) -> str:
        return self.semantics or PAIRED_SEMANTICS[self.intervals]

    @property
    def unusual_pairing(self) -> bool:
        return self.semantics is not None and self.semantics != PAIRED_SEMANTICS[self.intervals]

    def to_dict(self) -> dict:
        return {"binarize_threshold": self.binarize_threshold,
                "resize": list(self.resize) if self.resize else None,
                "resize_mode": self.resize_mode, "intervals": self.intervals.value,
                "epsilon": self.epsilon, "schedule": self.schedule.to_dict(),
                "semantics": self.region_semantics, "gap_factor": self.gap_factor}

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineConfig":
        kw = dict(d)
        if "schedule" in kw and isinstance(kw["schedule"], dict):
            kw["schedule"] = IterationSchedule.from_dict(kw["schedule"])
        unknown = set(kw) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**kw)

    @classmethod
    def load(cls, path=None) -> "PipelineConfig":
        """Config from ``path``, else from ``$TABLEPEAKS_CONFIG``, else defaults."""
        path = path or os.environ.get(CONFIG_ENV)
        if not path:
            return cls()
        return cls.from_dict(json.loads(Path(path).read_text()))

    def with_overrides(self, **kw) -> "PipelineConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


@dataclass(frozen=True)
class Extraction:
    boundaries: BoundarySet
    histogram: np.ndarray
    trace: RegularizationTrace
    config: PipelineConfig

    def summary(self) -> dict:
        f0 = self.trace.iterates[0]
        energies = []
        for n, f in enumerate(self.trace.iterates):
            theta = self.trace.thresholds_applied[min(n, len(self.trace.thresholds_applied) - 1)]
            energies.append(energy(f, f0, theta).to_dict())
        return {"thresholds_applied": list(self.trace.thresholds_applied),
                "peak_bins": list(self.trace.final_peaks),
                "energy": energies,
                "histogram": [int(v) for v in self.histogram],
                "config": self.config.to_dict()}

    def to_dict(self) -> dict:
        d = self.boundaries.to_dict()
        d["semantics"] = self.config.region_semantics
        return d


def extract(mask, config: PipelineConfig | None = None, axis: str = "vertical") -> Extraction:
    """Run the full boundary-extraction pipeline on a binary mask.

    ``axis="horizontal"`` transposes the mask first so the same machinery
    yields row (y) coordinates.
    """
    config = config or PipelineConfig()
    m = np.asarray(mask)
    if config.resize is not None:
        m, transform = resize_mask(m, *config.resize, mode=config.resize_mode)
    else:
        transform = GeometryTransform.identity(m.shape[1], m.shape[0])
    if axis == "horizontal":
        m, transform = transpose(m), transform.transposed()
    hist = accumulate_histogram(m, config.intervals)
    f0 = smooth_initial(normalize(hist), config.epsilon)
    trace = iterate(f0, config.schedule)
    if axis == "horizontal":
        transform = transform.transposed()
    bset = peaks_to_coordinates(trace.final_peaks, transform, axis)
    return Extraction(bset, hist, trace, config)


def write_trace(directory, extraction: Extraction) -> list[Path]:
    """One ``bin,value`` CSV per iterate plus ``summary.json``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for n, f in enumerate(extraction.trace.iterates):
        p = out / f"iterate_{n:02d}.csv"
        with p.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["bin", "value"])
            w.writerows((i, repr(float(v))) for i, v in enumerate(f))
        paths.append(p)
    p = out / "summary.json"
    p.write_text(json.dumps(extraction.summary(), indent=2, sort_keys=True) + "\n")
    paths.append(p)
    return paths


def write_signal_csv(path, signal) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["bin", "value"])
        w.writerows((i, repr(float(v))) for i, v in enumerate(signal))


__all__ = ["Extraction", "PipelineConfig", "extract", "write_signal_csv", "write_trace"]
