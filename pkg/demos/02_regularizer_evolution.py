# ---
# How the threshold-convolution passes reshape a density
# ---

# %% [markdown]
# A three-component Gaussian mixture on 1024 bins, buried in uniform noise
# at 10% of its peak. We follow each pass: the threshold, how much mass
# survives it, the number of local maxima, and the energy diagnostic.

# %%
import numpy as np

from tablepeaks import IterationSchedule, energy, find_peaks, iterate, threshold
from tablepeaks.density import excess_kurtosis
from tablepeaks.synth import MixtureSpec, add_noise, benchmark_noise, discretize_mixture

spec = MixtureSpec(((0.25, 210, 5.0), (0.45, 520, 7.0), (0.30, 790, 4.0)), 1024)
clean = discretize_mixture(spec)
f0 = add_noise(clean, benchmark_noise(clean, seed=7))
print("local maxima in the noisy input:", len(find_peaks(f0)))

# %%
schedule = IterationSchedule()  # 1.5 x std with sigma 5, then 1.0 x std with sigma 7
trace = iterate(f0, schedule)
for n, ((mult, sigma), theta) in enumerate(zip(schedule.steps, trace.thresholds_applied)):
    f = trace.iterates[n]
    kept = threshold(f, theta)
    print(f"pass {n}: theta = {mult} x std = {theta:.2e}, "
          f"bins kept {np.count_nonzero(kept)}/{f.size}, mass kept {kept.sum():.3f}, sigma {sigma}")

# %%
for n, f in enumerate(trace.iterates):
    theta = trace.thresholds_applied[min(n, len(schedule) - 1)]
    e = energy(f, f0, theta)
    print(f"f_{n}: maxima {len(find_peaks(f)):4d}  KL {e.kl_term:.3f}  "
          f"entropy {e.entropy_term:.3f}  penalty {e.penalty_term:.3f}  "
          f"excess kurtosis {excess_kurtosis(f):+.3f}")

# %% [markdown]
# The final peaks against the true centres:

# %%
print("peaks  ", list(trace.final_peaks))
print("centres", spec.centers.tolist())

# %% [markdown]
# Excess kurtosis is not guaranteed to fall. The uniform floor makes the
# noisy input nearly flat (kurtosis near -1.2); removing it lets the
# multimodal shape of the mixture show again. Gaussian smoothing then adds
# variance without touching the fourth cumulant, so the kurtosis of any
# platykurtic density drifts up toward zero.

# %%
print("clean mixture kurtosis", round(excess_kurtosis(clean), 3))
print("noisy input kurtosis  ", round(excess_kurtosis(f0), 3))
print("final iterate kurtosis", round(excess_kurtosis(trace.final), 3))
