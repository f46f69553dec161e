"""Confusion matrices and the statistics reported for each classifier.

Per-class tallies are one-vs-rest.  Rates (TPR, FPR, TNR, FNR) and accuracy
are averaged uniformly over classes.  Error and precision use the tallies
summed over classes, and Cohen's kappa uses the observed agreement against
the marginal-product chance agreement.  Everything is computed with
:class:`fractions.Fraction` and converted to float only at the end, so the
two-class identities ``TPR == TNR``, ``FPR == FNR`` and ``Ac == Pr`` hold
exactly.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """``counts[i, j]`` = patterns of true class ``i`` predicted as ``j``."""

    counts: np.ndarray

    @property
    def class_count(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def tp(self) -> np.ndarray:
        return np.diag(self.counts).copy()

    @property
    def fn(self) -> np.ndarray:
        return self.counts.sum(axis=1) - self.tp

    @property
    def fp(self) -> np.ndarray:
        return self.counts.sum(axis=0) - self.tp

    @property
    def tn(self) -> np.ndarray:
        return self.total - self.tp - self.fn - self.fp


def confusion(preds, truth, class_count: int) -> ConfusionMatrix:
    p = np.asarray(preds, dtype=np.int64)
    t = np.asarray(truth, dtype=np.int64)
    if p.shape != t.shape or p.ndim != 1:
        raise DimensionMismatchError(f"predictions {p.shape} and truth {t.shape} differ")
    for name, arr in (("prediction", p), ("truth", t)):
        if arr.size and (arr.min() < 0 or arr.max() >= class_count):
            raise InvalidInputError(f"{name} label outside 0..{class_count - 1}")
    counts = np.zeros((class_count, class_count), dtype=np.int64)
    np.add.at(counts, (t, p), 1)
    counts.setflags(write=False)
    return ConfusionMatrix(counts)


def confusion_from_counts(counts) -> ConfusionMatrix:
    c = np.array(counts, dtype=np.int64)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or (c < 0).any():
        raise InvalidInputError("confusion counts must be a square matrix of nonnegative integers")
    c.setflags(write=False)
    return ConfusionMatrix(c)


def _mean_defined(nums: Iterable[int], dens: Iterable[int]) -> Fraction:
    # Classes with a zero denominator have no defined rate and are skipped.
    terms = [Fraction(int(n), int(d)) for n, d in zip(nums, dens) if d]
    return sum(terms, Fraction(0)) / len(terms) if terms else Fraction(0)



@dataclass(frozen=True)
class MetricsReport:
    error: float
    class_errors: tuple[float, ...]
    accuracy: float
    precision: float
    macro_precision: float
    kappa: float
    kappa_degenerate: bool
    tpr: float
    fpr: float
    tnr: float
    fnr: float
    exact: dict

    def columns(self) -> dict[str, float]:
        """Values keyed by the short column names used in result tables."""
        out = {"E": self.error}
        out.update({f"E{i + 1}": e for i, e in enumerate(self.class_errors)})
        out.update(
            Ac=self.accuracy,
            Pr=self.precision,
            k=self.kappa,
            TPR=self.tpr,
            FPR=self.fpr,
            TNR=self.tnr,
            FNR=self.fnr,
            Pr_macro=self.macro_precision,
        )
        return out

    def to_text(self, decimals: int | None = 3) -> str:
        lines = [f"{key}={format_value(val, decimals)}" for key, val in self.columns().items()]
        if self.kappa_degenerate:
            lines.append("kappa_degenerate=true")
        return "\n".join(lines) + "\n"


def report(cm: ConfusionMatrix) -> MetricsReport:
    n = cm.total
    if n == 0:
        raise InvalidInputError("cannot report on an empty confusion matrix")
    tp, fn, fp, tn = cm.tp, cm.fn, cm.fp, cm.tn
    rows = cm.counts.sum(axis=1)
    cols = cm.counts.sum(axis=0)
    tp_all = int(tp.sum())

    error = 1 - Fraction(tp_all, n)
    class_errors = tuple(Fraction(int(f), int(r)) if r else None for f, r in zip(fn, rows))
    accuracy = _mean_defined(tp + tn, [n] * cm.class_count)
    precision = Fraction(tp_all, tp_all + int(fp.sum()))
    macro_precision = _mean_defined(tp, tp + fp)
    tpr = _mean_defined(tp, tp + fn)
    fnr = _mean_defined(fn, tp + fn)
    tnr = _mean_defined(tn, tn + fp)
    fpr = _mean_defined(fp, fp + tn)

    agree = Fraction(tp_all, n)
    chance = Fraction(int((rows * cols).sum()), n * n)
    degenerate = chance == 1
    kappa = None if degenerate else (agree - chance) / (1 - chance)

    exact = dict(
        E=error, class_errors=class_errors, Ac=accuracy, Pr=precision, Pr_macro=macro_precision,
        k=kappa, TPR=tpr, FPR=fpr, TNR=tnr, FNR=fnr, Pr_a=agree, Pr_e=chance,
    )
    return MetricsReport(
        error=float(error),
        class_errors=tuple(math.nan if e is None else float(e) for e in class_errors),
        accuracy=float(accuracy),
        precision=float(precision),
        macro_precision=float(macro_precision),
        kappa=math.nan if kappa is None else float(kappa),
        kappa_degenerate=degenerate,
        tpr=float(tpr),
        fpr=float(fpr),
        tnr=float(tnr),
        fnr=float(fnr),
        exact=exact,
    )


def evaluate(preds, truth, class_count: int) -> MetricsReport:
    return report(confusion(preds, truth, class_count))


def format_value(x: float, decimals: int | None = 3) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    if decimals is None:
        return repr(float(x))
    return f"{x:.{decimals}f}"


def reports_to_csv(rows: Sequence[tuple[str, MetricsReport]], decimals: int | None = 3) -> str:
    """One CSV row per classifier, header from the first report's columns."""
    if not rows:
        return ""
    buf = io.StringIO()
    header = list(rows[0][1].columns())
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["classifier", *header])
    for name, rep in rows:
        cols = rep.columns()
        writer.writerow([name, *(format_value(cols[h], decimals) for h in header)])
    return buf.getvalue()
