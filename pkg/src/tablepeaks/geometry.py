"""Peak bins -> image coordinates -> column/row intervals, plus OCR-driven row inference."""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, EmptyInputError, InputFormatError
from .mask_model import GeometryTransform

AXES = ("vertical", "horizontal")
SEMANTICS = ("centers", "separators")
DEFAULT_GAP_FACTOR = 0.6
LINE_OVERLAP = 0.5


@dataclass(frozen=True)
class BoundarySet:
    """Ordered boundary coordinates along one axis, in original-image pixels.

    ``axis`` is ``"vertical"`` for column x-coordinates and ``"horizontal"``
    for row y-coordinates. ``source_bins`` holds the processed-space peaks the
    coordinates came from; it is empty for boundaries not derived from peaks
    (ground truth, OCR-inferred rows).
    """

    axis: str
    coordinates: tuple
    source_bins: tuple = ()
    transform: GeometryTransform | None = None
    clamped: bool = False

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigurationError(f"axis must be one of {AXES}, got {self.axis!r}")
        coords = tuple(float(c) for c in self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        object.__setattr__(self, "source_bins", tuple(int(b) for b in self.source_bins))
        if any(b <= a for a, b in zip(coords, coords[1:])):
            raise ConfigurationError("boundary coordinates must be strictly increasing")
        if self.source_bins and len(self.source_bins) != len(coords):
            raise ConfigurationError("source_bins and coordinates differ in length")

    def __len__(self):
        return len(self.coordinates)

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "coordinates": list(self.coordinates),
            "source_bins": list(self.source_bins),
            "transform": self.transform.to_dict() if self.transform else None,
            "clamped": self.clamped,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundarySet":
        t = d.get("transform")
        return cls(d.get("axis", "vertical"), d.get("coordinates", ()), d.get("source_bins", ()),
                   GeometryTransform(**t) if t else None, bool(d.get("clamped", False)))


@dataclass(frozen=True)
class WordBox:
    text: str
    x_min: float
    y_min: float
    x_max: float
    y_max: float
    confidence: float | None = None

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InputFormatError(f"degenerate word box for {self.text!r}")

    @property
    def center(self) -> tuple[float, float]:
        return (self.x_min + self.x_max) / 2, (self.y_min + self.y_max) / 2

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    def to_dict(self) -> dict:
        d = {"text": self.text, "x_min": self.x_min, "y_min": self.y_min,
             "x_max": self.x_max, "y_max": self.y_max}
        if self.confidence is not None:
            d["confidence"] = self.confidence
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "WordBox":
        try:
            return cls(str(d["text"]), float(d["x_min"]), float(d["y_min"]),
                       float(d["x_max"]), float(d["y_max"]),
                       None if d.get("confidence") is None else float(d["confidence"]))
        except KeyError as exc:
            raise InputFormatError(f"word box missing field {exc}") from exc


def read_words(path) -> list[WordBox]:
    """JSON-lines word boxes, one object per line; blank lines ignored."""
    words = []
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        try:
            words.append(WordBox.from_dict(json.loads(line)))
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"{path}:{n}: {exc}") from exc
    return words


def write_words(path, words) -> None:
    Path(path).write_text("".join(json.dumps(w.to_dict()) + "\n" for w in words))


@dataclass(frozen=True)
class RegionPartition:
    """Half-open intervals tiling ``[0, width)`` and ``[0, height)``."""

    column_intervals: tuple
    row_intervals: tuple

    def __post_init__(self):
        for name in ("column_intervals", "row_intervals"):
            ivs = tuple((float(a), float(b)) for a, b in getattr(self, name))
            object.__setattr__(self, name, ivs)
            if not ivs or ivs[0][0] != 0.0:
                raise ConfigurationError(f"{name} must start at 0")
            for (a, b), (c, _) in zip(ivs, ivs[1:]):
                if b != c:
                    raise ConfigurationError(f"{name} must be contiguous")
            if any(b <= a for a, b in ivs):
                raise ConfigurationError(f"{name} must be non-empty")

    @classmethod
    def from_cuts(cls, column_cuts, width, row_cuts, height) -> "RegionPartition":
        return cls(_intervals(column_cuts, width), _intervals(row_cuts, height))

    @property
    def column_cuts(self) -> list:
        return [a for a, _ in self.column_intervals[1:]]

    @property
    def row_cuts(self) -> list:
        return [a for a, _ in self.row_intervals[1:]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_intervals), len(self.column_intervals)

    def to_dict(self) -> dict:
        return {"column_intervals": [list(iv) for iv in self.column_intervals],
                "row_intervals": [list(iv) for iv in self.row_intervals]}


def _intervals(cuts, extent) -> tuple:
    edges = [0.0, *(float(c) for c in cuts if 0 < c < extent), float(extent)]
    return tuple(zip(edges[:-1], edges[1:]))


def peaks_to_coordinates(peaks, transform: GeometryTransform, axis: str = "vertical") -> BoundarySet:
    """Map peak bins to original pixels via ``(bin + 0.5 - pad) * scale``.

    Coordinates outside ``[0, extent]`` are clamped and flagged; clamping
    that would create duplicates keeps the first occurrence.
    """
    bins = np.asarray(peaks, dtype=np.int64)
    if bins.size > 1 and np.any(np.diff(bins) <= 0):
        raise ConfigurationError("peaks must be strictly increasing")
    scale, pad, extent = transform.axis(axis)
    coords = (bins + 0.5 - pad) * scale
    clipped = np.clip(coords, 0.0, float(extent)) if extent > 0 else coords
    clamped = bool(np.any(clipped != coords))
    keep = np.r_[True, np.diff(clipped) > 0] if clipped.size else np.zeros(0, bool)
    return BoundarySet(axis, tuple(clipped[keep]), tuple(bins[keep]), transform, clamped)


def boundaries_to_regions(bset: BoundarySet, extent: float, semantics: str) -> tuple:
    """Tile ``[0, extent)`` from boundary coordinates along one axis.

    ``separators``: cut at every coordinate. ``centers``: cut halfway between
    consecutive coordinates so each interval holds one centre.
    """
    if semantics not in SEMANTICS:
        raise ConfigurationError(f"semantics must be one of {SEMANTICS}, got {semantics!r}")
    c = list(bset.coordinates)
    if semantics == "centers":
        cuts = [(a + b) / 2 for a, b in zip(c[:-1], c[1:])]
    else:
        cuts = c
    return _intervals(cuts, extent)


def _text_lines(words):
    """Group words into lines: union-find over pairs overlapping >= 50% of the smaller height."""
    n = len(words)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    order = sorted(range(n), key=lambda i: (words[i].y_min, words[i].y_max))
    for a_pos, i in enumerate(order):
        wi = words[i]
        for j in order[a_pos + 1:]:
            wj = words[j]
            if wj.y_min >= wi.y_max:
                break
            overlap = min(wi.y_max, wj.y_max) - max(wi.y_min, wj.y_min)
            if overlap >= LINE_OVERLAP * min(wi.height, wj.height):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(words[i])
    lines = [(min(w.y_min for w in g), max(w.y_max for w in g)) for g in groups.values()]
    return sorted(lines, key=lambda ln: ((ln[0] + ln[1]) / 2, ln[0], ln[1]))


def infer_rows_from_words(words, gap_factor: float = DEFAULT_GAP_FACTOR) -> BoundarySet:
    """Row boundaries at the middle of every inter-line gap wider than
    ``gap_factor`` times the median line height.
    """
    words = list(words)
    if not words:
        raise EmptyInputError("no word boxes to infer rows from")
    if not gap_factor > 0:
        raise ConfigurationError("gap_factor must be positive")
    lines = _text_lines(words)
    median_height = float(np.median([b - a for a, b in lines]))
    limit = gap_factor * median_height
    cuts = []
    for (_, prev_bottom), (next_top, _) in zip(lines, lines[1:]):
        if next_top - prev_bottom > limit:
            cut = (prev_bottom + next_top) / 2
            if not cuts or cut > cuts[-1]:
                cuts.append(cut)
    return BoundarySet("horizontal", tuple(cuts))


def infer_rows_per_column(words, column_intervals, gap_factor: float = DEFAULT_GAP_FACTOR) -> list:
    """Row inference run separately inside each column interval.

    Returns one :class:`BoundarySet` per column; columns with no words get an
    empty set.
    """
    starts = [a for a, _ in column_intervals]
    buckets = [[] for _ in column_intervals]
    for w in words:
        k = min(max(bisect_right(starts, w.center[0]) - 1, 0), len(buckets) - 1)
        buckets[k].append(w)
    return [infer_rows_from_words(b, gap_factor) if b else BoundarySet("horizontal", ())
            for b in buckets]


def locate(value: float, intervals) -> int:
    """Index of the half-open interval holding ``value``; out-of-range values go to the nearest end."""
    starts = [a for a, _ in intervals]
    k = bisect_right(starts, value) - 1
    return min(max(k, 0), len(intervals) - 1)


def partition_to_json(partition: RegionPartition, columns: BoundarySet | None = None,
                      rows: BoundarySet | None = None) -> dict:
    d = partition.to_dict()
    if columns is not None:
        d["columns"] = columns.to_dict()
    if rows is not None:
        d["rows"] = rows.to_dict()
    return d
