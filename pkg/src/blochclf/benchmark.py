"""Repeated train/evaluate runs comparing NMC, QC and their oracle.

Repetition ``i`` of a run seeded with ``s`` regenerates synthetic data with
seed ``s + i``, so any single repetition can be reproduced with
``generate --seed s+i``.  Holdout shuffles draw from a separate stream
derived from that seed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import datasets
from .classify import LabeledDataset, oracle_combine, predict_nmc, predict_qc, train_nmc, train_qc
from .errors import InvalidInputError
from .metrics import MetricsReport, evaluate, format_value
from .rng import derive_seed

SYNTHETIC = ("gaussian", "three-gaussian", "moon")
CLASSIFIERS = ("nmc", "qc", "oracle")
ROW_NAMES = {"nmc": "NMC", "qc": "QC", "oracle": "NMC-QC"}


@dataclass(frozen=True)
class DatasetSelector:
    kind: str
    path: str | None = None
    n_per_class: int | None = None
    noise: float | None = None

    @classmethod
    def parse(cls, text: str, n_per_class: int | None = None, noise: float | None = None) -> "DatasetSelector":
        text = text.strip()
        if text.startswith("csv:"):
            path = text[4:]
            if not path:
                raise InvalidInputError("csv: selector needs a path")
            return cls("csv", path, n_per_class, noise)
        if text not in SYNTHETIC:
            raise InvalidInputError(f"unknown dataset {text!r}; expected one of {', '.join(SYNTHETIC)} or csv:PATH")
        if n_per_class is not None and n_per_class < 1:
            raise InvalidInputError(f"--n must be a positive integer, got {n_per_class}")
        if noise is not None and not (noise >= 0 and math.isfinite(noise)):
            raise InvalidInputError(f"--noise must be >= 0, got {noise}")
        return cls(text, None, n_per_class, noise)

    @property
    def synthetic(self) -> bool:
        return self.kind != "csv"

    def load(self, seed: int) -> LabeledDataset:
        if self.kind == "gaussian":
            spec = datasets.GAUSSIAN if self.n_per_class is None else datasets.GAUSSIAN.with_count(self.n_per_class)
            return datasets.generate_gaussian(spec, seed)
        if self.kind == "three-gaussian":
            return datasets.generate_three_gaussian(seed, self.n_per_class or 150)
        if self.kind == "moon":
            noise = 0.1 if self.noise is None else self.noise
            return datasets.generate_moon(self.n_per_class or 100, noise, seed)
        return datasets.load_csv(self.path)

    def __str__(self) -> str:
        return f"csv:{self.path}" if self.kind == "csv" else self.kind


@dataclass(frozen=True)
class BenchmarkConfig:
    dataset: DatasetSelector
    seed: int = 0
    repetitions: int = 1
    holdout: float | None = None
    classifiers: tuple[str, ...] = CLASSIFIERS

    def __post_init__(self):
        if self.repetitions < 1:
            raise InvalidInputError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.holdout is not None and not 0.0 < self.holdout < 1.0:
            raise InvalidInputError(f"holdout fraction must lie in (0, 1), got {self.holdout}")
        unknown = [c for c in self.classifiers if c not in CLASSIFIERS]
        if unknown or not self.classifiers:
            raise InvalidInputError(f"classifiers must be drawn from {', '.join(CLASSIFIERS)}, got {self.classifiers}")

    @property
    def evaluation(self) -> str:
        return "resubstitution" if self.holdout is None else f"holdout {self.holdout:g}"


@dataclass
class BenchmarkResult:
    config: BenchmarkConfig
    class_count: int
    runs: dict[str, list[MetricsReport]] = field(default_factory=dict)

    def summary(self) -> dict[str, dict[str, tuple[float, float]]]:
        """Per classifier, ``column -> (mean, sd)`` across repetitions."""
        out = {}
        for name, reps in self.runs.items():
            keys = list(reps[0].columns())
            table = np.array([[r.columns()[k] for k in keys] for r in reps], dtype=float)
            mean = table.mean(axis=0)
            sd = table.std(axis=0, ddof=1) if len(reps) > 1 else np.zeros(len(keys))
            out[name] = {k: (float(m), float(s)) for k, m, s in zip(keys, mean, sd)}
        return out

    def mean(self, classifier: str, column: str) -> float:
        return self.summary()[classifier][column][0]


def run_repetition(config: BenchmarkConfig, index: int, fixed: LabeledDataset | None = None) -> dict[str, MetricsReport]:
    seed = config.seed + index
    data = fixed if fixed is not None else config.dataset.load(seed)
    if config.holdout is None:
        train, test = data, data
    else:
        train, test = datasets.holdout_split(data, config.holdout, derive_seed(seed, 1))
    preds = {
        "nmc": predict_nmc(train_nmc(train), test.patterns),
        "qc": predict_qc(train_qc(train), test.patterns),
    }
    preds["oracle"] = oracle_combine(preds["nmc"], preds["qc"], test.labels)
    return {name: evaluate(preds[name], test.labels, data.class_count) for name in config.classifiers}


def run_benchmark(config: BenchmarkConfig) -> BenchmarkResult:
    fixed = None if config.dataset.synthetic else config.dataset.load(config.seed)
    result = None
    for i in range(config.repetitions):
        reports = run_repetition(config, i, fixed)
        if result is None:
            class_count = len(next(iter(reports.values())).class_errors)
            result = BenchmarkResult(config, class_count, {name: [] for name in config.classifiers})
        for name, rep in reports.items():
            result.runs[name].append(rep)
    return result


def _columns(result: BenchmarkResult) -> list[str]:
    errors = [f"E{i + 1}" for i in range(result.class_count)]
    return ["E", *errors, "Ac", "Pr", "k", "TPR", "FPR", "TNR", "FNR"]


def format_table(result: BenchmarkResult, decimals: int | None = 3) -> str:
    summary = result.summary()
    cols = _columns(result)
    cfg = result.config
    header = f"dataset={cfg.dataset} seed={cfg.seed} reps={cfg.repetitions} evaluation={cfg.evaluation}"
    cells = [["", *cols]]
    for name in cfg.classifiers:
        row = [ROW_NAMES[name]]
        for c in cols:
            m, s = summary[name][c]
            row.append(f"{format_value(m, decimals)} ± {format_value(s, decimals)}" if cfg.repetitions > 1
                       else format_value(m, decimals))
        cells.append(row)
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    lines = [header]
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def format_csv(result: BenchmarkResult, decimals: int | None = 3) -> str:
    summary = result.summary()
    cols = _columns(result)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["classifier", *[f"{c}_{stat}" for c in cols for stat in ("mean", "sd")]])
    for name in result.config.classifiers:
        w.writerow([ROW_NAMES[name], *[format_value(summary[name][c][i], decimals) for c in cols for i in (0, 1)]])
    return buf.getvalue()


def write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        print(text, end="")
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
