"""Seeded small CASA instances shared by the unit and acceptance tests."""

from oracles import locate_linear
from tablepeaks.evaluate import GroundTruthCell
from tablepeaks.geometry import RegionPartition, WordBox

VOCAB = ("total", "Total", "net", "2019", "  net ", "a", "b")


def cell(r, c, words, partition=None):
    if partition is None:
        return GroundTruthCell(r, c, 0, 0, 1, 1, tuple(words))
    (x0, x1), (y0, y1) = partition.column_intervals[c], partition.row_intervals[r]
    return GroundTruthCell(r, c, x0, y0, x1, y1, tuple(words))


def word_at(text, cx, cy, half=2.0):
    return WordBox(text, cx - half, cy - half, cx + half, cy + half)


def random_instance(rng, max_words=20, max_grid=4):
    w, h = 200.0, 120.0
    nc, nr = rng.integers(1, max_grid + 1, 2)
    part = RegionPartition.from_cuts(sorted(rng.choice(range(10, 190), nc - 1, replace=False)), w,
                                     sorted(rng.choice(range(10, 110), nr - 1, replace=False)), h)
    truth = {}
    words = []
    for _ in range(rng.integers(1, max_words + 1)):
        text = str(rng.choice(VOCAB))
        x, y = rng.uniform(3, w - 3), rng.uniform(3, h - 3)
        r, c = locate_linear(y, part.row_intervals), locate_linear(x, part.column_intervals)
        truth.setdefault((r, c), []).append(text)
        # some predictions wander, some are misread, some vanish
        roll = rng.random()
        if roll < 0.15:
            continue
        if roll < 0.3:
            x, y = rng.uniform(3, w - 3), rng.uniform(3, h - 3)
        elif roll < 0.4:
            text = text + "x"
        words.append(word_at(text, x, y))
    cells = [cell(r, c, ws, part) for (r, c), ws in truth.items()]
    return words, part, cells
