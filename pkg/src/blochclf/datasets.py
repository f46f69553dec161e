"""Seeded synthetic datasets and a CSV reader/writer.

CSV layout: comma-separated, ``.`` as decimal point, features first and an
integer label last.  A single header line is allowed and detected by its
first field failing to parse as a number.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .classify import LabeledDataset
from .errors import InvalidInputError, ParseError
from .rng import SplitMix64


@dataclass(frozen=True)
class GaussianClass:
    mean: tuple[float, float]
    variances: tuple[float, float]
    count: int

    def __post_init__(self):
        if len(self.mean) != 2 or len(self.variances) != 2:
            raise InvalidInputError("Gaussian classes are 2-D")
        if not all(v > 0 and math.isfinite(v) for v in self.variances):
            raise InvalidInputError(f"covariance diagonal must be positive, got {self.variances}")
        if not all(math.isfinite(m) for m in self.mean):
            raise InvalidInputError("mean must be finite")
        if int(self.count) != self.count or self.count < 1:
            raise InvalidInputError(f"class size must be a positive integer, got {self.count}")


@dataclass(frozen=True)
class GaussianSpec:
    """Axis-aligned Gaussian classes; covariances are diagonal variances."""

    classes: tuple[GaussianClass, ...]

    def __post_init__(self):
        if not self.classes:
            raise InvalidInputError("a Gaussian spec needs at least one class")

    def with_count(self, count: int) -> "GaussianSpec":
        return GaussianSpec(tuple(GaussianClass(c.mean, c.variances, count) for c in self.classes))


GAUSSIAN = GaussianSpec((
    GaussianClass((1.0, 1.0), (20.0, 50.0), 100),
    GaussianClass((2.0, 2.0), (5.0, 5.0), 100),
))

THREE_GAUSSIAN = GaussianSpec((
    GaussianClass((-3.0, -3.0), (50.0, 100.0), 150),
    GaussianClass((5.0, 5.0), (10.0, 5.0), 150),
    GaussianClass((7.0, 7.0), (30.0, 70.0), 150),
))


def generate_gaussian(spec: GaussianSpec = GAUSSIAN, seed: int = 0) -> LabeledDataset:
    """Draw every class in order; each point uses one polar-method pair (x, then y)."""
    rng = SplitMix64(seed)
    rows, labels = [], []
    for label, cls in enumerate(spec.classes):
        sx, sy = math.sqrt(cls.variances[0]), math.sqrt(cls.variances[1])
        for _ in range(cls.count):
            zx = rng.normal()
            zy = rng.normal()
            rows.append((cls.mean[0] + sx * zx, cls.mean[1] + sy * zy))
            labels.append(label)
    return LabeledDataset(np.array(rows), np.array(labels), len(spec.classes))


def generate_three_gaussian(seed: int = 0, n_per_class: int = 150) -> LabeledDataset:
    return generate_gaussian(THREE_GAUSSIAN.with_count(n_per_class), seed)


def generate_moon(n_per_class: int = 100, noise_sigma: float = 0.1, seed: int = 0) -> LabeledDataset:
    """Two interleaving unit half-circles with isotropic Gaussian noise.

    Class 0 is ``(cos t, sin t)``, class 1 is ``(1 - cos t, 0.5 - sin t)``,
    with ``t`` evenly spaced over ``[0, pi]``.
    """
    if int(n_per_class) != n_per_class or n_per_class < 1:
        raise InvalidInputError(f"n_per_class must be a positive integer, got {n_per_class}")
    if not (noise_sigma >= 0 and math.isfinite(noise_sigma)):
        raise InvalidInputError(f"noise_sigma must be >= 0, got {noise_sigma}")
    n = int(n_per_class)
    t = np.linspace(0.0, math.pi, n) if n > 1 else np.zeros(1)
    arcs = [
        np.column_stack([np.cos(t), np.sin(t)]),
        np.column_stack([1.0 - np.cos(t), 0.5 - np.sin(t)]),
    ]
    rng = SplitMix64(seed)
    X = np.vstack(arcs)
    if noise_sigma > 0:
        noise = np.array([[rng.normal(), rng.normal()] for _ in range(len(X))])
        X = X + noise_sigma * noise
    y = np.repeat([0, 1], n)
    return LabeledDataset(X, y, 2)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def format_csv(data: LabeledDataset, header: bool = False) -> str:
    """Serialize with shortest round-trip float repr, so save/load is exact."""
    labels = data.labels if data.label_values is None else np.asarray(data.label_values)[data.labels]
    lines = []
    if header:
        lines.append(",".join([f"x{i + 1}" for i in range(data.dimension)] + ["label"]))
    for row, label in zip(data.patterns.tolist(), labels.tolist()):
        lines.append(",".join([repr(float(v)) for v in row] + [str(int(label))]))
    return "\n".join(lines) + "\n"


def save_csv(data: LabeledDataset, path: str | os.PathLike, header: bool = False) -> None:
    Path(path).write_text(format_csv(data, header), encoding="utf-8", newline="\n")


def _parse_label(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        raise ValueError(f"label {text!r} is not an integer")
    return int(value)


def parse_csv(text: str, source: str | None = None) -> LabeledDataset:
    rows: list[list[float]] = []
    raw_labels: list[int] = []
    width = None
    first = True
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if first:
            first = False
            try:
                float(fields[0])
            except ValueError:
                continue  # header
        if len(fields) < 2:
            raise ParseError("need at least one feature and a label", lineno, source)
        try:
            feats = [float(f) for f in fields[:-1]]
            label = _parse_label(fields[-1])
        except ValueError as exc:
            raise ParseError(f"malformed line: {exc}", lineno, source) from None
        if not all(math.isfinite(v) for v in feats):
            raise ParseError("non-finite feature value", lineno, source)
        if width is None:
            width = len(feats)
        elif len(feats) != width:
            raise ParseError(f"expected {width} features, found {len(feats)}", lineno, source)
        rows.append(feats)
        raw_labels.append(label)
    if not rows:
        raise ParseError("no data rows", None, source)

    values = sorted(set(raw_labels))
    if values == list(range(len(values))):
        labels, label_values = raw_labels, None
    else:
        index = {v: i for i, v in enumerate(values)}
        labels, label_values = [index[v] for v in raw_labels], tuple(values)
    return LabeledDataset(np.array(rows), np.array(labels), len(values), label_values)


def load_csv(path: str | os.PathLike) -> LabeledDataset:
    """Read a dataset; labels other than ``0..C-1`` are remapped in sorted order."""
    p = Path(path)
    return parse_csv(p.read_text(encoding="utf-8"), str(p))


# ---------------------------------------------------------------------------
# Splits
# ---------------------------------------------------------------------------

def holdout_split(data: LabeledDataset, test_fraction: float, seed: int) -> tuple[LabeledDataset, LabeledDataset]:
    """Stratified seeded split into ``(train, test)``.

    Each class keeps at least one training pattern.
    """
    if not 0.0 < test_fraction < 1.0:
        raise InvalidInputError(f"holdout fraction must lie in (0, 1), got {test_fraction}")
    rng = SplitMix64(seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for label in range(data.class_count):
        idx = np.flatnonzero(data.labels == label).tolist()
        rng.shuffle(idx)
        n_test = min(len(idx) - 1, max(0, round(test_fraction * len(idx))))
        test_idx.extend(idx[:n_test])
        train_idx.extend(idx[n_test:])
    if not test_idx:
        raise InvalidInputError("holdout split left the test set empty")
    return data.subset(sorted(train_idx)), data.subset(sorted(test_idx))


def describe(data: LabeledDataset) -> str:
    sizes = data.class_sizes()
    names: Sequence[int] = data.label_values or range(data.class_count)
    parts = ", ".join(f"{name}: {size}" for name, size in zip(names, sizes))
    return f"{len(data)} patterns, {data.class_count} classes ({parts})"
