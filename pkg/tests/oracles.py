"""Slow, obviously-correct reference implementations used as test oracles.

None of these import the code paths they check.
"""

import itertools
import math

import mpmath


def runs(row):
    """(value, start, end) for each maximal run, ``end`` inclusive."""
    out, pos = [], 0
    for value, group in itertools.groupby(list(row)):
        n = len(list(group))
        out.append((int(value), pos, pos + n - 1))
        pos += n
    return out


def brute_transitions(row):
    return [x for x in range(len(row) - 1) if row[x] != row[x + 1]]


def brute_histogram(mask, selection="all"):
    """Double loop over scan lines and interior runs.

    An interior run [s, e] is bounded by transitions s-1 and e, so its
    midpoint is (s - 1 + e) / 2.
    """
    height, width = len(mask), len(mask[0])
    g = [0] * width
    for y in range(height):
        for value, s, e in runs(mask[y]):
            if s == 0 or e == width - 1:
                continue
            if selection == "on" and value != 1:
                continue
            if selection == "off" and value != 0:
                continue
            g[math.floor((s - 1 + e) / 2)] += 1
    return g


def brute_convolve(f, w):
    """Zero-padded 'same' convolution, odd-length kernel centred on its middle."""
    n, r = len(f), len(w) // 2
    out = []
    for i in range(n):
        acc = 0.0
        for k in range(-r, r + 1):
            j = i - k
            if 0 <= j < n:
                acc += f[j] * w[k + r]
        out.append(acc)
    return out


def gaussian_pdf(x, mu, s):
    return math.exp(-0.5 * ((x - mu) / s) ** 2) / (s * math.sqrt(2 * math.pi))


def brute_peaks(f):
    """Scan plateaus left to right; keep those flanked by strictly smaller values."""
    peaks, i, n = [], 1, len(f)
    while i < n - 1:
        if f[i - 1] < f[i]:
            j = i
            while j + 1 < n and f[j + 1] == f[i]:
                j += 1
            if j + 1 < n and f[j + 1] < f[i]:
                peaks.append((i + j) // 2)
            i = j + 1
        else:
            i += 1
    return peaks


def hp_energy(f, f0, theta, lam, mu, dps=50):
    """KL, entropy, penalty summed in extended precision."""
    with mpmath.workdps(dps):
        kl = mpmath.mpf(0)
        ent = mpmath.mpf(0)
        for a, b in zip(f, f0):
            if a > 0:
                a_ = mpmath.mpf(a)
                kl += a_ * (mpmath.log(a_) - mpmath.log(mpmath.mpf(b)))
                ent += a_ * mpmath.log(a_)
        pen = mpmath.mpf(sum(1 for a in f if 0 < a < theta)) / len(f)
        return float(kl), float(ent), float(pen), float(kl + lam * ent + mu * pen)


def locate_linear(value, intervals):
    """Linear scan; values outside the tiling go to the nearest end interval."""
    if value < intervals[0][0]:
        return 0
    for k, (a, b) in enumerate(intervals):
        if a <= value < b:
            return k
    return len(intervals) - 1


def brute_casa(words, col_intervals, row_intervals, cells):
    """Reference CASA: per-cell first-fit matching over an explicit used-flag list."""
    placed = []
    for w in words:
        cx = (w.x_min + w.x_max) / 2
        cy = (w.y_min + w.y_max) / 2
        placed.append([locate_linear(cy, row_intervals), locate_linear(cx, col_intervals),
                       " ".join(w.text.split()).casefold(), False])
    correct = total = 0
    for cell in cells:
        for t in cell.words:
            total += 1
            key = " ".join(t.split()).casefold()
            for p in placed:
                if not p[3] and p[0] == cell.row_index and p[1] == cell.col_index and p[2] == key:
                    p[3] = True
                    correct += 1
                    break
    return 100.0 * correct / total
