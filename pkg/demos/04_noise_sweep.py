# ---
# Where boundary recovery breaks down
# ---

# %% [markdown]
# The benchmark draws pixel-flip noise up to 5%. Flips are independent
# per pixel, so every flip inside a band splits an on-run and adds two
# transitions. Each spurious pair votes at its own midpoint. Once flips are
# common, whole bands rarely survive a scan line intact, and the
# histogram fills with near-uniform clutter that a std-based threshold does
# not clear. This sweep shows the transition.

# %%
from tablepeaks.bench import SuiteConfig, run_suite

print(f"{'flip range':>16} {'precision':>9} {'recall':>7} {'mae':>6} {'casa':>7} {'naive':>7}")
for lo, hi in ((0.0, 0.0), (0.0, 0.005), (0.005, 0.01), (0.01, 0.02), (0.02, 0.05), (0.0, 0.05)):
    agg = run_suite(SuiteConfig(instances=30, seed=11, flip_probability=(lo, hi)))["aggregate"]
    mae = "-" if agg["mae"] is None else f"{agg['mae']:.2f}"
    print(f"{f'[{lo}, {hi}]':>16} {agg['precision']:9.3f} {agg['recall']:7.3f} {mae:>6} "
          f"{agg['casa_pipeline_mean']:7.2f} {agg['casa_baseline_mean']:7.2f}")

# %% [markdown]
# Row dropout, by contrast, only removes whole scan lines; the remaining
# lines still vote in the right places.

# %%
for drop in (0.0, 0.3, 0.6, 0.9):
    agg = run_suite(SuiteConfig(instances=30, seed=11, flip_probability=(0.0, 0.0),
                                dropout_probability=(drop, drop), casa=False))["aggregate"]
    print(f"dropout {drop:.1f}: precision {agg['precision']:.3f} recall {agg['recall']:.3f}")
