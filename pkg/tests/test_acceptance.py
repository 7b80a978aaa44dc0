"""Acceptance criteria, one test per criterion.

Every criterion prints exactly one ``PASS``/``FAIL`` line; the lines are
repeated in the pytest terminal summary. Run this file directly
(``python tests/test_acceptance.py``) to get just the verdicts.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from casa_cases import cell, random_instance, word_at  # noqa: E402
from oracles import brute_casa, brute_histogram, gaussian_pdf  # noqa: E402
from tablepeaks import cli  # noqa: E402
from tablepeaks.accumulate import accumulate_histogram, normalize, smooth_initial  # noqa: E402
from tablepeaks.bench import SuiteConfig, make_instance, run_suite  # noqa: E402
from tablepeaks.density import convolve, excess_kurtosis  # noqa: E402
from tablepeaks.evaluate import assign_words_to_cells, casa  # noqa: E402
from tablepeaks.mask_model import synth_mask  # noqa: E402
from tablepeaks.regularize import IterationSchedule, iterate, resolve_threshold, threshold  # noqa: E402
from tablepeaks.synth import add_noise, benchmark_mixture, benchmark_noise, discretize_mixture  # noqa: E402

W = 1024
# light mask noise for the CASA comparison; the bench defaults otherwise
LIGHT_NOISE_SUITE = SuiteConfig(instances=20, seed=0, flip_probability=(0.0, 0.005))


def sampled_normal(mu, var, n=W):
    g = np.array([gaussian_pdf(x, mu, math.sqrt(var)) for x in range(n)])
    return g / g.sum()


def sampled_mixture(components, n=W):
    g = np.array([sum(w * gaussian_pdf(x, m, math.sqrt(v)) for w, m, v in components) for x in range(n)])
    return g / g.sum()


def criterion_1():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(1000):
        h, w = rng.integers(1, 65, 2)
        m = (rng.random((h, w)) < rng.uniform(0.05, 0.95)).astype(np.uint8)
        for mode in ("all", "on", "off"):
            mismatches += accumulate_histogram(m, mode).tolist() != brute_histogram(m.tolist(), mode)
    elapsed = time.perf_counter() - start
    return mismatches == 0 and elapsed < 10, f"accumulation oracle: {mismatches} mismatches / 3000, {elapsed:.2f}s"


def criterion_2():
    start = time.perf_counter()
    l1 = np.abs(convolve(sampled_normal(300, 16), 3.0) - sampled_normal(300, 25)).sum()
    worst_l1, worst_mass = l1, 0.0
    rng = np.random.default_rng(2)
    for _ in range(10):
        spec = benchmark_mixture(int(rng.integers(2 ** 31)))
        comps = [(w, m, s * s) for w, m, s in spec.components]
        got = convolve(sampled_mixture(comps), 3.0)
        want = sampled_mixture([(w, m, v + 9) for w, m, v in comps])
        worst_l1 = max(worst_l1, np.abs(got - want).sum())
        for _, m, v in comps:
            r = 4 * math.sqrt(v + 9)
            lo, hi = math.floor(m - r), math.ceil(m + r) + 1
            worst_mass = max(worst_mass, abs(got[lo:hi].sum() - want[lo:hi].sum()))
    elapsed = time.perf_counter() - start
    ok = l1 <= 1e-3 and worst_l1 <= 1e-3 and worst_mass <= 1e-3 and elapsed < 1
    return ok, (f"Gaussian closure: L1 {l1:.2e} single, {worst_l1:.2e} worst mixture, "
                f"local mass error {worst_mass:.2e}, {elapsed:.2f}s")


def criterion_3():
    rng = np.random.default_rng(3)
    x = np.arange(W, dtype=np.float64)
    worst_shift = worst_var = 0.0
    start = time.perf_counter()
    for _ in range(100):
        f = np.zeros(W)
        lo = int(rng.integers(200, 400))
        hi = lo + int(rng.integers(50, 300))
        f[lo:hi] = rng.random(hi - lo) ** 2
        f /= f.sum()
        sigma = float(rng.uniform(1, 8))
        g = convolve(f, sigma)
        m0, m1 = x @ f, x @ g / g.sum()
        v0 = ((x - m0) ** 2) @ f
        v1 = ((x - m1) ** 2) @ g / g.sum()
        worst_shift = max(worst_shift, abs(m1 - m0))
        worst_var = max(worst_var, abs((v1 - v0) - sigma ** 2) / sigma ** 2)
    elapsed = time.perf_counter() - start
    ok = worst_shift <= 0.1 and worst_var <= 0.005 and elapsed < 5
    return ok, (f"moments: worst mean shift {worst_shift:.2e} bins, worst variance error "
                f"{100 * worst_var:.3f}% of sigma^2, {elapsed:.2f}s")


def _iterate_corpus():
    """Starting densities and schedules covering every way iterate is driven."""
    rng = np.random.default_rng(4)
    schedules = [IterationSchedule(),
                 IterationSchedule(((1.0, 2.0), (1.5, 5.0), (1.0, 7.0)), "std"),
                 IterationSchedule(((0.1, 3.0), (0.2, 6.0)), "quantile")]
    for seed in range(100):
        f = discretize_mixture(benchmark_mixture(seed))
        yield add_noise(f, benchmark_noise(f, seed)), schedules[seed % 3]
    suite = SuiteConfig(instances=50)
    for i in range(50):
        inst = make_instance(suite, i)
        mask, _ = synth_mask(inst.grid, inst.noise)
        yield smooth_initial(normalize(accumulate_histogram(mask, "on"))), schedules[i % 3]
    for _ in range(50):
        yield normalize(rng.integers(0, 50, int(rng.integers(64, 2048)))), schedules[0]


def criterion_4():
    worst = 0.0
    idempotent = True
    iterations = 0
    for f0, schedule in _iterate_corpus():
        trace = iterate(f0, schedule)
        for f, (mult, _), theta in zip(trace.iterates, schedule.steps, trace.thresholds_applied):
            assert theta == resolve_threshold(f, mult, schedule.threshold_mode)
            once = threshold(f, theta)
            idempotent &= bool(np.array_equal(threshold(once, theta), once))
        for f in trace.iterates[1:]:
            worst = max(worst, abs(f.sum() - 1.0))
            iterations += 1
    ok = worst <= 1e-9 and idempotent
    return ok, (f"normalization: worst |sum f - 1| = {worst:.1e} over {iterations} iterations, "
                f"threshold idempotent: {idempotent}")


def criterion_5():
    start = time.perf_counter()
    agg = run_suite(SuiteConfig())["aggregate"]
    elapsed = time.perf_counter() - start
    p, r, mae = agg["precision"], agg["recall"], agg["mae"]
    ok = r >= 0.95 and p >= 0.90 and mae is not None and mae <= 3 and elapsed < 60
    mae_s = "n/a" if mae is None else f"{mae:.3f}"
    return ok, (f"synthetic recovery (50 grids): recall {r:.3f} (>= 0.95), precision {p:.3f} (>= 0.90), "
                f"MAE {mae_s} px (<= 3), {elapsed:.1f}s")


def criterion_6():
    rng = np.random.default_rng(6)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        words, part, cells = random_instance(rng)
        got = casa(words, assign_words_to_cells(words, part), cells).casa_percent
        mismatches += got != brute_casa(words, part.column_intervals, part.row_intervals, cells)
    truth = [cell(r, c, [f"w{r}{c}"]) for r in range(2) for c in range(3)]
    words = [word_at(f"w{r}{c}", 0, 0) for r in range(2) for c in range(3)]
    perfect = casa(words, [(r, c) for r in range(2) for c in range(3)], truth).casa_percent
    shifted = casa(words, [(r, c + 1) for r in range(2) for c in range(3)], truth).casa_percent
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and perfect == 100.0 and shifted == 0.0 and elapsed < 5
    return ok, (f"CASA evaluator: {mismatches} mismatches / 200, perfect {perfect}, shifted {shifted}, "
                f"{elapsed:.2f}s")


def criterion_7():
    start = time.perf_counter()
    results = run_suite(LIGHT_NOISE_SUITE)
    elapsed = time.perf_counter() - start
    agg = results["aggregate"]
    ties = sum(r["casa_pipeline"] == r["casa_baseline"] for r in results["instances"])
    win, pipe, base = agg["casa_win_fraction"], agg["casa_pipeline_mean"], agg["casa_baseline_mean"]
    ok = win >= 0.80 and pipe > base and elapsed < 60
    return ok, (f"layout awareness (20 tables): strict wins {win:.2f} (>= 0.80), ties {ties}, "
                f"mean CASA {pipe:.2f} vs baseline {base:.2f}, {elapsed:.1f}s")


def criterion_8(tmp_dir=None):
    import tempfile
    with tempfile.TemporaryDirectory(dir=tmp_dir) as d:
        outs = [Path(d) / "a.json", Path(d) / "b.json"]
        codes = [cli.main(["bench", "--seed", "0", "--out", str(p)]) for p in outs]
        a, b = (p.read_bytes() for p in outs)
    ok = codes == [0, 0] and a == b
    return ok, f"determinism: two bench runs byte-identical: {a == b} ({len(a)} bytes)"


def criterion_9():
    held = 0
    for seed in range(100):
        f = discretize_mixture(benchmark_mixture(seed))
        trace = iterate(add_noise(f, benchmark_noise(f, seed)))
        held += excess_kurtosis(trace.final) <= excess_kurtosis(trace.iterates[0])
    return held >= 95, f"kurtosis reduction: holds on {held}/100 noisy mixtures (>= 95)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


def test_criterion_1_accumulation_oracle(verdict):
    verdict(1, *criterion_1())


def test_criterion_2_gaussian_closure(verdict):
    verdict(2, *criterion_2())


def test_criterion_3_moments(verdict):
    verdict(3, *criterion_3())


def test_criterion_4_normalization(verdict):
    verdict(4, *criterion_4())


def test_criterion_5_synthetic_recovery(verdict):
    verdict(5, *criterion_5())


def test_criterion_6_casa_evaluator(verdict):
    verdict(6, *criterion_6())


def test_criterion_7_layout_awareness(verdict):
    verdict(7, *criterion_7())


def test_criterion_8_determinism(verdict, tmp_path, capsys):
    result = criterion_8(tmp_path)
    capsys.readouterr()  # drop the bench table written to stderr
    verdict(8, *result)


def test_criterion_9_kurtosis(verdict):
    verdict(9, *criterion_9())


if __name__ == "__main__":
    import contextlib
    import io

    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        with contextlib.redirect_stderr(io.StringIO()):
            ok, detail = fn()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    sys.exit(1 if failed else 0)
