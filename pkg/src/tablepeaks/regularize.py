"""Iterative threshold-convolution regularization of a 1-D density.

Each pass zeroes bins below a threshold, smooths with a Gaussian and
renormalizes. Modes of the final iterate are the structural coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .density import KernelSpec, convolve, renormalize
from .errors import ConfigurationError, EmptySignalError

__all__ = [
    "DEFAULT_STEPS", "EnergyDiagnostic", "IterationSchedule", "KernelSpec",
    "RegularizationTrace", "convolve", "energy", "find_peaks", "iterate",
    "renormalize", "resolve_threshold", "threshold",
]

DEFAULT_STEPS = ((1.5, 5.0), (1.0, 7.0))
MAX_ITERATIONS = 16
THRESHOLD_MODES = ("std", "quantile")


@dataclass(frozen=True)
class IterationSchedule:
    """Per-pass ``(threshold_multiplier, kernel_sigma)`` pairs.

    In ``std`` mode the multiplier scales the standard deviation of the
    current iterate's bin values. In ``quantile`` mode it is the fraction of
    lowest positive amplitudes to remove (e.g. 0.1).
    """

    steps: tuple = DEFAULT_STEPS
    threshold_mode: str = "std"

    def __post_init__(self):
        steps = tuple((float(t), float(s)) for t, s in self.steps)
        object.__setattr__(self, "steps", steps)
        if not 1 <= len(steps) <= MAX_ITERATIONS:
            raise ConfigurationError(f"schedule needs 1..{MAX_ITERATIONS} steps, got {len(steps)}")
        if self.threshold_mode not in THRESHOLD_MODES:
            raise ConfigurationError(f"threshold_mode must be one of {THRESHOLD_MODES}")
        for t, s in steps:
            if not (t >= 0 and math.isfinite(t)):
                raise ConfigurationError(f"threshold multipliers must be >= 0, got {t}")
            if self.threshold_mode == "quantile" and t >= 1:
                raise ConfigurationError("quantile fractions must be < 1")
            if not (s > 0 and math.isfinite(s)):
                raise ConfigurationError(f"kernel sigmas must be > 0, got {s}")

    @classmethod
    def from_lists(cls, multipliers, sigmas, iters=None, threshold_mode="std"):
        """Pair up per-pass lists; the shorter list repeats its last value.

        ``iters`` fixes the pass count; lists longer than it are an error.
        """
        multipliers, sigmas = list(multipliers), list(sigmas)
        if not multipliers or not sigmas:
            raise ConfigurationError("--theta-mult and --sigma need at least one value")
        n = max(len(multipliers), len(sigmas)) if iters is None else iters
        if n < 1 or max(len(multipliers), len(sigmas)) > n:
            raise ConfigurationError(f"--iters={iters} but {max(len(multipliers), len(sigmas))} values given")
        multipliers += multipliers[-1:] * (n - len(multipliers))
        sigmas += sigmas[-1:] * (n - len(sigmas))
        return cls(tuple(zip(multipliers, sigmas)), threshold_mode)

    def __len__(self):
        return len(self.steps)

    def to_dict(self) -> dict:
        return {"steps": [list(s) for s in self.steps], "threshold_mode": self.threshold_mode}

    @classmethod
    def from_dict(cls, d: dict) -> "IterationSchedule":
        return cls(tuple(tuple(s) for s in d.get("steps", DEFAULT_STEPS)), d.get("threshold_mode", "std"))


@dataclass(frozen=True)
class RegularizationTrace:
    iterates: tuple
    thresholds_applied: tuple
    final_peaks: tuple
    schedule: IterationSchedule = field(default_factory=IterationSchedule)

    @property
    def final(self) -> np.ndarray:
        return self.iterates[-1]


def threshold(f, theta: float) -> np.ndarray:
    """Keep bins with ``f >= theta``; zero the rest. No renormalization."""
    f = np.asarray(f, dtype=np.float64)
    return np.where(f >= theta, f, 0.0)


def resolve_threshold(f, multiplier: float, mode: str = "std") -> float:
    """Absolute threshold for the current iterate.

    ``std``: ``multiplier * std(f)`` over all bins (population std).
    ``quantile``: the ``multiplier`` quantile of the positive bin values, so
    that fraction of the non-zero amplitudes falls below it.
    """
    f = np.asarray(f, dtype=np.float64)
    if mode == "std":
        return float(multiplier * f.std())
    if mode == "quantile":
        positive = f[f > 0]
        if positive.size == 0 or multiplier == 0:
            return 0.0
        return float(np.quantile(positive, multiplier))
    raise ConfigurationError(f"unknown threshold mode {mode!r}")


def find_peaks(f) -> np.ndarray:
    """Strict interior local maxima; a flat-topped maximum reports its floor-midpoint bin."""
    f = np.asarray(f, dtype=np.float64)
    if f.size < 3:
        return np.empty(0, dtype=np.int64)
    # compress runs of equal values, then look for strict maxima among runs
    starts = np.flatnonzero(np.r_[True, f[1:] != f[:-1]])
    ends = np.r_[starts[1:] - 1, f.size - 1]
    vals = f[starts]
    if vals.size < 3:
        return np.empty(0, dtype=np.int64)
    inner = np.arange(1, vals.size - 1)
    is_max = (vals[inner - 1] < vals[inner]) & (vals[inner + 1] < vals[inner])
    hit = inner[is_max]
    return ((starts[hit] + ends[hit]) // 2).astype(np.int64)


def iterate(f0, schedule: IterationSchedule | None = None) -> RegularizationTrace:
    """Run ``f_{n+1} = renormalize(G_sigma_n * T_theta_n(f_n))`` for every step."""
    schedule = schedule or IterationSchedule()
    f = renormalize(f0)
    iterates, thetas = [f], []
    for n, (mult, sigma) in enumerate(schedule.steps):
        theta = resolve_threshold(f, mult, schedule.threshold_mode)
        smoothed = convolve(threshold(f, theta), KernelSpec(sigma))
        try:
            f = renormalize(smoothed)
        except EmptySignalError as exc:
            raise EmptySignalError(f"signal emptied at iteration {n} (theta={theta:.3g})", iteration=n) from exc
        iterates.append(f)
        thetas.append(theta)
    return RegularizationTrace(tuple(iterates), tuple(thetas), tuple(int(p) for p in find_peaks(f)), schedule)


@dataclass(frozen=True)
class EnergyDiagnostic:
    kl_term: float
    entropy_term: float
    penalty_term: float
    lam: float = 1.0
    mu: float = 1.0
    support_violation: bool = False

    @property
    def total(self) -> float:
        return self.kl_term + self.lam * self.entropy_term + self.mu * self.penalty_term

    def to_dict(self) -> dict:
        def finite(v):
            return v if math.isfinite(v) else None
        return {"kl": finite(self.kl_term), "entropy": self.entropy_term, "penalty": self.penalty_term,
                "lambda": self.lam, "mu": self.mu, "total": finite(self.total),
                "support_violation": self.support_violation}


def energy(f, f0, theta: float, lam: float = 1.0, mu: float = 1.0) -> EnergyDiagnostic:
    """Evaluate the regularization energy of ``f`` relative to ``f0`` (observability only).

    KL divergence is infinite when ``f`` puts mass where ``f0`` has none;
    that case is flagged via ``support_violation`` instead of raising.
    """
    if lam < 0 or mu < 0:
        raise ConfigurationError("lambda and mu must be non-negative")
    f = np.asarray(f, dtype=np.float64)
    f0 = np.asarray(f0, dtype=np.float64)
    if f.shape != f0.shape:
        raise ConfigurationError("f and f0 must have the same number of bins")
    pos = f > 0
    violation = bool(np.any(pos & (f0 <= 0)))
    fp = f[pos]
    entropy = float(np.sum(fp * np.log(fp)))
    kl = math.inf if violation else float(np.sum(fp * (np.log(fp) - np.log(f0[pos]))))
    penalty = float(np.count_nonzero(pos & (f < theta)) / f.size)
    return EnergyDiagnostic(kl, entropy, penalty, lam, mu, violation)
