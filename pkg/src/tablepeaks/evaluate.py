"""Cell-aware segmentation accuracy (CASA) and boundary-recovery metrics."""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputFormatError, UndefinedMetricError
from .geometry import BoundarySet, RegionPartition, locate

_WS = re.compile(r"\s+")


def normalize_text(text: str, casefold: bool = True) -> str:
    """Trim, collapse internal whitespace and (optionally) case-fold."""
    s = _WS.sub(" ", text.strip())
    return s.casefold() if casefold else s


@dataclass(frozen=True)
class GroundTruthCell:
    row_index: int
    col_index: int
    x_min: float
    y_min: float
    x_max: float
    y_max: float
    words: tuple = ()

    @property
    def key(self) -> tuple[int, int]:
        return self.row_index, self.col_index

    def to_dict(self) -> dict:
        return {"row": self.row_index, "col": self.col_index, "x_min": self.x_min, "y_min": self.y_min,
                "x_max": self.x_max, "y_max": self.y_max, "words": list(self.words)}

    @classmethod
    def from_dict(cls, d: dict) -> "GroundTruthCell":
        try:
            return cls(int(d["row"]), int(d["col"]), float(d["x_min"]), float(d["y_min"]),
                       float(d["x_max"]), float(d["y_max"]), tuple(str(w) for w in d.get("words", ())))
        except KeyError as exc:
            raise InputFormatError(f"ground-truth cell missing field {exc}") from exc


def read_truth(path) -> list[GroundTruthCell]:
    """Ground truth JSON: ``{"cells": [{"row", "col", "x_min", ..., "words": [...]}, ...]}``."""
    doc = json.loads(Path(path).read_text())
    cells = doc["cells"] if isinstance(doc, dict) else doc
    return [GroundTruthCell.from_dict(c) for c in cells]


def write_truth(path, cells, **extra) -> None:
    doc = {"cells": [c.to_dict() for c in cells], **extra}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def assign_words_to_cells(words, partition: RegionPartition) -> list[tuple[int, int]]:
    """``(row, col)`` of the cell containing each word's centre (half-open intervals)."""
    out = []
    for w in words:
        cx, cy = w.center
        out.append((locate(cy, partition.row_intervals), locate(cx, partition.column_intervals)))
    return out


@dataclass
class CasaReport:
    total_words: int
    correct_words: int
    per_cell: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def casa_percent(self) -> float:
        return 100.0 * self.correct_words / self.total_words

    def to_dict(self) -> dict:
        return {
            "casa_percent": self.casa_percent,
            "correct_words": self.correct_words,
            "total_words": self.total_words,
            "per_cell": [{"row": r, "col": c, "correct": k, "total": n}
                         for (r, c), (k, n) in sorted(self.per_cell.items())],
            "failures": [{"row": r, "col": c, "word": w, "tag": t} for r, c, w, t in self.failures],
        }

    def to_table(self) -> str:
        lines = [f"CASA {self.casa_percent:.2f}%  ({self.correct_words}/{self.total_words} words)",
                 f"{'row':>4} {'col':>4} {'correct':>8} {'total':>6}"]
        for (r, c), (k, n) in sorted(self.per_cell.items()):
            lines.append(f"{r:>4} {c:>4} {k:>8} {n:>6}")
        return "\n".join(lines)


def casa(predicted_words, assignments, truth, normalizer=normalize_text) -> CasaReport:
    """Fraction of ground-truth words whose text is predicted inside the right cell.

    Matching is a per-cell multiset intersection on normalized text, so each
    truth word consumes at most one predicted word. Unmatched truth words are
    tagged ``wrong-cell`` when the text survives elsewhere, ``text-mismatch``
    when the cell holds some other unconsumed prediction, else ``unmatched``.
    """
    truth = list(truth)
    total = sum(len(c.words) for c in truth)
    if total == 0:
        raise UndefinedMetricError("ground truth holds no words")
    predicted = {}
    for w, key in zip(predicted_words, assignments):
        predicted.setdefault(tuple(key), Counter())[normalizer(w.text)] += 1

    per_cell, misses, correct = {}, [], 0
    for cell in sorted(truth, key=lambda c: c.key):
        bag = predicted.get(cell.key, Counter())
        hits = 0
        for word in cell.words:
            t = normalizer(word)
            if bag[t] > 0:
                bag[t] -= 1
                hits += 1
            else:
                misses.append((cell, word, t))
        k, n = per_cell.get(cell.key, (0, 0))
        per_cell[cell.key] = (k + hits, n + len(cell.words))
        correct += hits

    leftover = Counter()
    for bag in predicted.values():
        leftover += bag
    failures = []
    for cell, word, t in misses:
        if leftover[t] > 0:
            leftover[t] -= 1
            tag = "wrong-cell"
        elif +predicted.get(cell.key, Counter()):
            tag = "text-mismatch"
        else:
            tag = "unmatched"
        failures.append((cell.row_index, cell.col_index, word, tag))
    return CasaReport(total, correct, per_cell, failures)


def boundary_recovery(predicted: BoundarySet, truth: BoundarySet, tolerance: float):
    """Greedy nearest matching within ``tolerance``.

    Returns ``(precision, recall, mae)``; ``mae`` is ``None`` when nothing
    matched. Empty prediction sets have precision 1, empty truth sets recall 1.
    """
    if predicted.axis != truth.axis:
        raise InputFormatError("predicted and truth boundaries are on different axes")
    p, t = predicted.coordinates, truth.coordinates
    pairs = sorted((abs(a - b), i, j) for i, a in enumerate(p) for j, b in enumerate(t)
                   if abs(a - b) <= tolerance)
    used_p, used_t, errors = set(), set(), []
    for d, i, j in pairs:
        if i in used_p or j in used_t:
            continue
        used_p.add(i)
        used_t.add(j)
        errors.append(d)
    precision = len(errors) / len(p) if p else 1.0
    recall = len(errors) / len(t) if t else 1.0
    mae = sum(errors) / len(errors) if errors else (0.0 if not p and not t else None)
    return precision, recall, mae
