"""Midpoint accumulation: mask -> transition midpoints -> histogram -> density.

Indices are 0-based. A transition at ``x`` means ``row[x] != row[x + 1]``, so
transitions lie in ``[0, W - 2]`` and the image border never counts as one.
"""

from __future__ import annotations

import enum

import numpy as np

from .density import convolve, renormalize
from .errors import EmptySignalError
from .mask_model import as_mask

DEFAULT_EPSILON = 1.0


class IntervalSelection(str, enum.Enum):
    """Which consecutive-transition intervals contribute a midpoint."""

    ALL = "all"
    ON = "on"
    OFF = "off"

    @classmethod
    def parse(cls, value) -> "IntervalSelection":
        if isinstance(value, cls):
            return value
        aliases = {"all-intervals": "all", "on-runs": "on", "off-runs": "off"}
        return cls(aliases.get(value, value))


def scan_transitions(mask, y: int) -> np.ndarray:
    """Strictly increasing x where ``mask[y, x] != mask[y, x + 1]``."""
    m = as_mask(mask)
    if not 0 <= y < m.shape[0]:
        raise IndexError(f"scan line {y} out of range [0, {m.shape[0]})")
    row = m[y]
    return np.flatnonzero(row[:-1] != row[1:])


def interval_midpoints(transitions, mask_row, selection=IntervalSelection.ALL) -> np.ndarray:
    """Midpoints ``(t[i] + t[i+1]) / 2`` of consecutive transitions.

    For ``on``/``off`` only intervals whose enclosed pixels are 1/0 are kept.
    The pixels enclosed by ``(t[i], t[i+1])`` are ``t[i]+1 .. t[i+1]``.
    """
    selection = IntervalSelection.parse(selection)
    t = np.asarray(transitions, dtype=np.int64)
    if t.size < 2:
        return np.empty(0, dtype=np.float64)
    mids = (t[:-1] + t[1:]) / 2.0
    if selection is IntervalSelection.ALL:
        return mids
    value = np.asarray(mask_row)[t[:-1] + 1]
    return mids[value == (1 if selection is IntervalSelection.ON else 0)]


def accumulate_histogram(mask, selection=IntervalSelection.ALL) -> np.ndarray:
    """Count midpoints per bin ``floor(midpoint)`` over every scan line.

    Returns an ``int64`` array of length W.
    """
    selection = IntervalSelection.parse(selection)
    m = as_mask(mask)
    h, w = m.shape
    # vectorised over the whole mask: flat transition list ordered by (y, x)
    ys, xs = np.nonzero(m[:, :-1] != m[:, 1:])
    if xs.size < 2:
        return np.zeros(w, dtype=np.int64)
    same_line = ys[:-1] == ys[1:]
    left, right = xs[:-1][same_line], xs[1:][same_line]
    if selection is not IntervalSelection.ALL:
        enclosed = m[ys[:-1][same_line], left + 1]
        keep = enclosed == (1 if selection is IntervalSelection.ON else 0)
        left, right = left[keep], right[keep]
    # floor((l + r) / 2) for non-negative integers
    bins = (left + right) // 2
    return np.bincount(bins, minlength=w).astype(np.int64)


def normalize(hist) -> np.ndarray:
    """Empirical density ``g / sum(g)``."""
    g = np.asarray(hist, dtype=np.float64)
    if not g.sum() > 0:
        raise EmptySignalError("no structural transitions in mask")
    return g / g.sum()


def smooth_initial(f0, epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """Convolve with a unit-mass Gaussian of width ``epsilon`` and renormalize."""
    return renormalize(convolve(f0, epsilon))


def initial_density(mask, selection=IntervalSelection.ALL, epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    return smooth_initial(normalize(accumulate_histogram(mask, selection)), epsilon)
