"""1-D density primitives: Gaussian kernels, truncated convolution, renormalization.

Signals are plain float64 numpy arrays indexed by bin. A *density* is a
non-negative signal whose bins sum to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, EmptySignalError

MASS_TOLERANCE = 1e-9
TRUNCATION = 4.0


@dataclass(frozen=True)
class KernelSpec:
    """Discrete zero-mean Gaussian kernel truncated at ``ceil(4 * sigma)`` bins.

    Parameters
    ----------
    sigma : float
        Standard deviation in bins. Must be positive.
    """

    sigma: float
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ConfigurationError(f"kernel sigma must be positive, got {self.sigma!r}")
        radius = self.truncation_radius
        x = np.arange(-radius, radius + 1, dtype=np.float64)
        w = np.exp(-0.5 * (x / self.sigma) ** 2)
        w /= w.sum()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def mean(self) -> float:
        return 0.0

    @property
    def truncation_radius(self) -> int:
        return int(math.ceil(TRUNCATION * self.sigma))


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Unit-mass sampled Gaussian of standard deviation ``sigma`` (length ``2*ceil(4 sigma)+1``)."""
    return KernelSpec(sigma).weights


def convolve(signal, kernel) -> np.ndarray:
    """Linear convolution with zero padding; output has the input's length.

    ``kernel`` is a :class:`KernelSpec`, a sigma, or an odd-length weight array
    centred on its middle element. Mass that would land outside the signal is
    dropped (boundary leakage); call :func:`renormalize` afterwards if unit
    mass is needed.
    """
    f = np.asarray(signal, dtype=np.float64)
    if isinstance(kernel, KernelSpec):
        w = kernel.weights
    elif np.ndim(kernel) == 0:
        w = gaussian_kernel(float(kernel))
    else:
        w = np.asarray(kernel, dtype=np.float64)
        if w.size % 2 == 0:
            raise ConfigurationError("kernel weights must have odd length")
    radius = w.size // 2
    # np.convolve(mode="same") returns max(len) samples, so slice "full" instead.
    full = np.convolve(f, w, mode="full")
    return full[radius:radius + f.size]


def renormalize(signal) -> np.ndarray:
    """Divide by total mass. Raises :class:`EmptySignalError` on zero mass."""
    f = np.asarray(signal, dtype=np.float64)
    mass = f.sum()
    if not mass > 0:
        raise EmptySignalError("signal has zero mass")
    return f / mass


def is_density(signal, tol: float = MASS_TOLERANCE) -> bool:
    f = np.asarray(signal)
    return bool(np.all(f >= 0) and abs(f.sum() - 1.0) <= tol)


def moments(signal) -> tuple[float, float]:
    """Mean and variance of the bin index under ``signal`` treated as a distribution."""
    f = renormalize(signal)
    x = np.arange(f.size, dtype=np.float64)
    mean = float(np.dot(x, f))
    var = float(np.dot((x - mean) ** 2, f))
    return mean, var


def excess_kurtosis(signal) -> float:
    """Fourth standardized moment minus 3 of the bin index under ``signal``."""
    f = renormalize(signal)
    x = np.arange(f.size, dtype=np.float64)
    mean = np.dot(x, f)
    d = x - mean
    var = np.dot(d * d, f)
    return float(np.dot(d ** 4, f) / var ** 2 - 3.0)
