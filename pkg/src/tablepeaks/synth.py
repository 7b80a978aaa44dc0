"""Synthetic 1-D densities: discretized Gaussian mixtures with additive noise.

These are the oracles for the regularizer: component centres and weights
are known by construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .density import renormalize
from .errors import ConfigurationError

NOISE_MODELS = ("additive-uniform", "additive-gaussian")


@dataclass(frozen=True)
class MixtureSpec:
    """``components`` is a sequence of ``(weight, center, spread)`` in bins."""

    components: tuple
    bin_count: int

    def __post_init__(self):
        comps = tuple((float(w), float(m), float(s)) for w, m, s in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ConfigurationError("mixture needs at least one component")
        if self.bin_count < 2:
            raise ConfigurationError("bin_count must be >= 2")
        weights = [w for w, _, _ in comps]
        if min(weights) < 0 or abs(math.fsum(weights) - 1.0) > 1e-12:
            raise ConfigurationError("mixture weights must be non-negative and sum to 1")
        for _, m, s in comps:
            if not s > 0:
                raise ConfigurationError("component spreads must be positive")
            if not 4 * s < m < self.bin_count - 4 * s:
                raise ConfigurationError(f"component at {m} (spread {s}) is within 4 spreads of the border")

    @property
    def weights(self):
        return np.array([w for w, _, _ in self.components])

    @property
    def centers(self):
        return np.array([m for _, m, _ in self.components])

    @property
    def spreads(self):
        return np.array([s for _, _, s in self.components])

    @classmethod
    def from_dict(cls, d: dict) -> "MixtureSpec":
        comps = [(c["weight"], c["center"], c["spread"]) if isinstance(c, dict) else tuple(c)
                 for c in d["components"]]
        return cls(tuple(comps), int(d["bin_count"]))

    def to_dict(self) -> dict:
        return {"bin_count": self.bin_count,
                "components": [{"weight": w, "center": m, "spread": s} for w, m, s in self.components]}


@dataclass(frozen=True)
class DensityNoiseSpec:
    """``amplitude`` is absolute: uniform noise draws from [0, amplitude),
    Gaussian noise has standard deviation ``amplitude``."""

    model: str = "additive-uniform"
    amplitude: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.model not in NOISE_MODELS:
            raise ConfigurationError(f"noise model must be one of {NOISE_MODELS}")
        if not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise ConfigurationError("noise amplitude must be finite and >= 0")

    @classmethod
    def from_dict(cls, d: dict) -> "DensityNoiseSpec":
        return cls(d.get("model", "additive-uniform"), float(d.get("amplitude", 0.0)), int(d.get("seed", 0)))


def mixture_values(spec: MixtureSpec, x) -> np.ndarray:
    """Continuous mixture density evaluated at ``x``."""
    x = np.asarray(x, dtype=np.float64)[..., None]
    w, m, s = spec.weights, spec.centers, spec.spreads
    return np.sum(w * np.exp(-0.5 * ((x - m) / s) ** 2) / (s * math.sqrt(2 * math.pi)), axis=-1)


def discretize_mixture(spec: MixtureSpec) -> np.ndarray:
    """Mixture sampled at integer bin positions, renormalized to unit mass.

    Bin ``i`` is sampled at coordinate ``i``, matching the bin-index
    convention used by the moment and peak computations.
    """
    return renormalize(mixture_values(spec, np.arange(spec.bin_count)))


def add_noise(f, noise: DensityNoiseSpec) -> np.ndarray:
    """Add noise, clip negatives to zero and renormalize.

    Zero amplitude returns an unchanged copy of ``f``.
    """
    f = np.asarray(f, dtype=np.float64)
    if noise.amplitude == 0:
        return f.copy()
    rng = np.random.default_rng(noise.seed)
    if noise.model == "additive-uniform":
        eps = rng.uniform(0.0, noise.amplitude, f.size)
    else:
        eps = rng.normal(0.0, noise.amplitude, f.size)
    return renormalize(np.clip(f + eps, 0.0, None))


def benchmark_mixture(seed: int, bin_count: int = 1024, components: int = 3,
                      min_separation: float = 80.0) -> MixtureSpec:
    """Seeded mixture from the noisy-mixture benchmark family.

    ``components`` Gaussians with Dirichlet(5) weights, spreads in [3, 8]
    bins, centres at least ``min_separation`` apart and 64 bins from the
    borders.
    """
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.full(components, 5.0))
    weights[-1] = 1.0 - weights[:-1].sum()
    spreads = rng.uniform(3.0, 8.0, components)
    for _ in range(10_000):
        centers = np.sort(rng.uniform(64, bin_count - 64, components))
        if components == 1 or np.diff(centers).min() >= min_separation:
            break
    else:
        raise ConfigurationError("could not place mixture components; lower min_separation")
    return MixtureSpec(tuple(zip(weights, centers, spreads)), bin_count)


def benchmark_noise(f, seed: int, relative_amplitude: float = 0.1) -> DensityNoiseSpec:
    """Uniform noise scaled to ``relative_amplitude`` times the peak of ``f``."""
    return DensityNoiseSpec("additive-uniform", relative_amplitude * float(np.max(f)), seed)


def read_mixture_specs(path):
    """JSON ``{"mixture": {...}, "noise": {...}}``."""
    doc = json.loads(Path(path).read_text())
    return MixtureSpec.from_dict(doc["mixture"]), DensityNoiseSpec.from_dict(doc.get("noise", {}))
