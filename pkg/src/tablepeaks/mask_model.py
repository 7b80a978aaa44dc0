"""Binary table masks: loading, resizing, transposition and synthesis.

A mask is a 2-D ``uint8`` array of zeros and ones, shape ``(height, width)``,
addressed as ``mask[y, x]``. Scan lines are rows.
"""

from __future__ import annotations

import io
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ConfigurationError, InputFormatError

DEFAULT_BINARIZE_THRESHOLD = 128
RESIZE_MODES = ("stretch", "pad")


def as_mask(cells) -> np.ndarray:
    """Validate ``cells`` as a binary mask and return it as a ``uint8`` array."""
    m = np.asarray(cells)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise InputFormatError(f"mask must be a non-empty 2-D array, got shape {m.shape}")
    if m.dtype == bool:
        return m.astype(np.uint8)
    if not np.isin(m, (0, 1)).all():
        raise InputFormatError("mask cells must be 0 or 1")
    return m.astype(np.uint8, copy=False)


def binarize(raster, threshold: int = DEFAULT_BINARIZE_THRESHOLD) -> np.ndarray:
    """Cells are 1 where intensity >= ``threshold``."""
    return (np.asarray(raster) >= threshold).astype(np.uint8)


def load_mask(image_bytes: bytes, binarize_threshold: int = DEFAULT_BINARIZE_THRESHOLD) -> np.ndarray:
    """Decode a PNG/PGM (or any Pillow-readable) raster and binarize it.

    Multi-channel rasters are converted to luminance first.
    """
    try:
        with Image.open(io.BytesIO(image_bytes)) as img:
            img.load()
            if img.mode not in ("L", "1"):
                img = img.convert("L")
            raster = np.array(img.convert("L"), dtype=np.uint8)
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise InputFormatError(f"could not decode mask raster: {exc}") from exc
    return binarize(raster, binarize_threshold)


def read_mask(path, binarize_threshold: int = DEFAULT_BINARIZE_THRESHOLD) -> np.ndarray:
    return load_mask(Path(path).read_bytes(), binarize_threshold)


def mask_to_pgm(mask) -> bytes:
    """Binary P5 PGM with values {0, 255}."""
    m = as_mask(mask)
    h, w = m.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    return header + (m * 255).astype(np.uint8).tobytes()


def write_mask(path, mask) -> None:
    Path(path).write_bytes(mask_to_pgm(mask))


@dataclass(frozen=True)
class GeometryTransform:
    """Maps processed-space coordinates back to the original image.

    ``original = (processed - pad) * scale`` per axis.
    """

    scale_x: float = 1.0
    scale_y: float = 1.0
    pad_left: int = 0
    pad_top: int = 0
    original_width: int = 0
    original_height: int = 0

    def __post_init__(self):
        if not (self.scale_x > 0 and self.scale_y > 0):
            raise ConfigurationError("transform scales must be positive")
        if self.pad_left < 0 or self.pad_top < 0:
            raise ConfigurationError("transform pads must be non-negative")

    @classmethod
    def identity(cls, width: int, height: int) -> "GeometryTransform":
        return cls(1.0, 1.0, 0, 0, width, height)

    def axis(self, axis: str) -> tuple[float, int, int]:
        """(scale, pad, original extent) for ``"vertical"`` (x) or ``"horizontal"`` (y)."""
        if axis == "vertical":
            return self.scale_x, self.pad_left, self.original_width
        if axis == "horizontal":
            return self.scale_y, self.pad_top, self.original_height
        raise ConfigurationError(f"unknown axis {axis!r}")

    def to_original(self, x, y):
        x = (np.asarray(x, dtype=np.float64) - self.pad_left) * self.scale_x
        y = (np.asarray(y, dtype=np.float64) - self.pad_top) * self.scale_y
        return x, y

    def to_processed(self, x, y):
        x = np.asarray(x, dtype=np.float64) / self.scale_x + self.pad_left
        y = np.asarray(y, dtype=np.float64) / self.scale_y + self.pad_top
        return x, y

    def transposed(self) -> "GeometryTransform":
        return GeometryTransform(self.scale_y, self.scale_x, self.pad_top, self.pad_left,
                                 self.original_height, self.original_width)

    def to_dict(self) -> dict:
        return asdict(self)


def _nearest_indices(src: int, dst: int) -> np.ndarray:
    # sample the source pixel whose extent contains each destination pixel centre
    idx = np.floor((np.arange(dst) + 0.5) * (src / dst)).astype(np.int64)
    return np.clip(idx, 0, src - 1)


def resize_mask(mask, target_width: int, target_height: int, mode: str = "stretch"):
    """Nearest-neighbour resize.

    ``stretch`` resamples to exactly the target. ``pad`` scales uniformly to
    fit, anchors the content top-left and zero-fills the right/bottom remainder.

    Returns
    -------
    (mask, GeometryTransform)
    """
    m = as_mask(mask)
    if target_width < 1 or target_height < 1:
        raise ConfigurationError("resize targets must be >= 1")
    if mode not in RESIZE_MODES:
        raise ConfigurationError(f"resize mode must be one of {RESIZE_MODES}, got {mode!r}")
    h, w = m.shape
    if mode == "stretch":
        new_w, new_h = target_width, target_height
    else:
        fit = min(target_width / w, target_height / h)
        new_w = min(target_width, max(1, int(round(w * fit))))
        new_h = min(target_height, max(1, int(round(h * fit))))
    rows = _nearest_indices(h, new_h)
    cols = _nearest_indices(w, new_w)
    content = m[np.ix_(rows, cols)]
    if mode == "pad":
        out = np.zeros((target_height, target_width), dtype=np.uint8)
        out[:new_h, :new_w] = content
    else:
        out = np.ascontiguousarray(content)
    transform = GeometryTransform(w / new_w, h / new_h, 0, 0, w, h)
    return out, transform


def transpose(mask) -> np.ndarray:
    """Swap axes so rows become scan lines for horizontal separators."""
    return np.ascontiguousarray(as_mask(mask).T)


@dataclass(frozen=True)
class GridSpec:
    """Synthetic table layout with known separators.

    One mask band of width ``2 * band_half_width`` is drawn centred in each
    column region (between consecutive ``column_boundaries``).
    """

    image_width: int
    image_height: int
    column_boundaries: tuple
    row_boundaries: tuple = ()
    band_half_width: float = 20.0

    def __post_init__(self):
        object.__setattr__(self, "column_boundaries", tuple(float(c) for c in self.column_boundaries))
        object.__setattr__(self, "row_boundaries", tuple(float(r) for r in self.row_boundaries))
        if self.image_width < 1 or self.image_height < 1:
            raise ConfigurationError("image dimensions must be >= 1")
        if self.band_half_width <= 0:
            raise ConfigurationError("band_half_width must be positive")
        for name, coords, extent in (("column", self.column_boundaries, self.image_width),
                                     ("row", self.row_boundaries, self.image_height)):
            c = np.asarray(coords)
            if c.size and (c.min() < 0 or c.max() > extent):
                raise ConfigurationError(f"{name} boundaries must lie within [0, {extent}]")
            if c.size > 1 and np.any(np.diff(c) <= 0):
                raise ConfigurationError(f"{name} boundaries must be strictly increasing")
        c = np.asarray(self.column_boundaries)
        if c.size > 1 and np.any(np.diff(c) <= 2 * self.band_half_width):
            raise ConfigurationError("adjacent column boundaries must be more than 2*band_half_width apart")

    @property
    def column_centers(self) -> tuple:
        c = self.column_boundaries
        return tuple((a + b) / 2 for a, b in zip(c[:-1], c[1:]))

    @property
    def n_columns(self) -> int:
        return max(len(self.column_boundaries) - 1, 0)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["column_boundaries"] = list(self.column_boundaries)
        d["row_boundaries"] = list(self.row_boundaries)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        try:
            return cls(int(d["image_width"]), int(d["image_height"]), d["column_boundaries"],
                       d.get("row_boundaries", ()), float(d.get("band_half_width", 20.0)))
        except KeyError as exc:
            raise ConfigurationError(f"grid spec missing field {exc}") from exc


@dataclass(frozen=True)
class NoiseSpec:
    flip_probability: float = 0.0
    dropout_probability: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("flip_probability", "dropout_probability"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1], got {p}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "NoiseSpec":
        return cls(float(d.get("flip_probability", 0.0)), float(d.get("dropout_probability", 0.0)),
                   int(d.get("seed", 0)))


def load_specs(path):
    """Read a JSON document holding ``grid`` and optional ``noise`` objects."""
    doc = json.loads(Path(path).read_text())
    grid = GridSpec.from_dict(doc["grid"] if "grid" in doc else doc)
    noise = NoiseSpec.from_dict(doc.get("noise", {}))
    return grid, noise


def render_bands(grid: GridSpec) -> np.ndarray:
    """Noise-free mask: pixel x is on when its centre lies within a band."""
    m = np.zeros((grid.image_height, grid.image_width), dtype=np.uint8)
    centres = np.arange(grid.image_width) + 0.5
    on = np.zeros(grid.image_width, dtype=bool)
    for c in grid.column_centers:
        on |= np.abs(centres - c) < grid.band_half_width
    m[:, on] = 1
    return m


def synth_mask(grid: GridSpec, noise: NoiseSpec | None = None):
    """Render ``grid`` as a column mask, then apply pixel flips and scan-line dropout.

    Returns
    -------
    mask : ndarray
    truth : BoundarySet
        Vertical boundary set holding ``grid.column_boundaries``.
    """
    from .geometry import BoundarySet

    noise = noise or NoiseSpec()
    m = render_bands(grid)
    rng = np.random.default_rng(noise.seed)
    if noise.flip_probability > 0:
        m ^= (rng.random(m.shape) < noise.flip_probability).astype(np.uint8)
    if noise.dropout_probability > 0:
        m[rng.random(m.shape[0]) < noise.dropout_probability] = 0
    truth = BoundarySet("vertical", grid.column_boundaries, (),
                        GeometryTransform.identity(grid.image_width, grid.image_height))
    return m, truth
