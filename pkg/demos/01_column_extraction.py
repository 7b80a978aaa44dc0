# ---
# Column extraction, step by step
# ---

# %% [markdown]
# We start from a synthetic column mask with known geometry, then walk the
# pipeline one stage at a time: transitions, midpoint histogram, initial
# density, threshold-convolution passes, peaks, and finally pixel
# coordinates and column intervals.

# %%
import numpy as np

from tablepeaks import (GridSpec, NoiseSpec, accumulate_histogram, boundaries_to_regions, find_peaks,
                        iterate, normalize, peaks_to_coordinates, resize_mask, scan_transitions,
                        smooth_initial, synth_mask)

grid = GridSpec(1400, 600, column_boundaries=(40, 380, 700, 1010, 1360), band_half_width=45)
mask, truth = synth_mask(grid, NoiseSpec(flip_probability=0.002, dropout_probability=0.05, seed=3))
print("mask", mask.shape, "on-pixel fraction", round(mask.mean(), 3))
print("true column centres", grid.column_centers)

# %% [markdown]
# The mask is brought to the 1024x1024 working resolution. The transform
# remembers the scale so peaks can be mapped back later.

# %%
work, transform = resize_mask(mask, 1024, 1024, mode="stretch")
transform

# %% [markdown]
# One scan line: transitions are the indices where the value changes.
# Each consecutive pair bounds an interval whose midpoint is one vote.

# %%
t = scan_transitions(work, 300)
print("transitions on line 300:", t.tolist())

# %% [markdown]
# Voting with on-runs only puts the evidence at column-body centres.

# %%
g = accumulate_histogram(work, "on")
print("histogram mass", g.sum(), "non-empty bins", np.count_nonzero(g))
print("busiest bins", np.argsort(g)[-8:][::-1].tolist())

# %%
f0 = smooth_initial(normalize(g), epsilon=1.0)
trace = iterate(f0)
for n, f in enumerate(trace.iterates):
    print(f"f_{n}: {len(find_peaks(f)):4d} local maxima")
print("thresholds applied", [f"{th:.2e}" for th in trace.thresholds_applied])

# %% [markdown]
# Peaks of the last iterate are bins; map them back through the transform.

# %%
columns = peaks_to_coordinates(trace.final_peaks, transform)
print("recovered centres", [round(c, 1) for c in columns.coordinates])
print("errors (px)", np.round(np.subtract(columns.coordinates, grid.column_centers), 1).tolist())

# %%
for lo, hi in boundaries_to_regions(columns, grid.image_width, "centers"):
    print(f"column [{lo:7.1f}, {hi:7.1f})")
