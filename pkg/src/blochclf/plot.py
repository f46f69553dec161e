"""Decision-region plots as plain SVG 1.1.

The classifier is evaluated on a regular grid over the data's bounding box;
each grid row is drawn as runs of equal-label rectangles and the boundary as
the cell edges separating different labels.  Output depends only on the
inputs (no timestamps, ids or randomness), so identical calls give
identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable
from xml.sax.saxutils import escape

import numpy as np

from .classify import LabeledDataset
from .errors import UnsupportedPlotError

Predictor = Callable[[np.ndarray], np.ndarray]

GRID_RESOLUTION = 400
PADDING = 0.10

_FILL = ("#cfe2f3", "#f4cccc", "#d9ead3", "#fff2cc", "#e6d7f0", "#fce5cd")
_INK = ("#1f5fa8", "#b22222", "#2e7d32", "#b8860b", "#6a3d9a", "#d2691e")


@dataclass(frozen=True)
class Grid:
    """Cell-centre coordinates and the predicted label of every cell.

    ``labels[i, j]`` belongs to ``(xs[j], ys[i])``; row 0 is the lowest y.
    """

    xs: np.ndarray
    ys: np.ndarray
    labels: np.ndarray
    bounds: tuple[float, float, float, float]


def bounding_box(X: np.ndarray, pad: float = PADDING) -> tuple[float, float, float, float]:
    lo = X.min(axis=0)
    hi = X.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    lo = lo - pad * span
    hi = hi + pad * span
    return float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1])


def decision_grid(predict: Predictor, bounds, resolution: int = GRID_RESOLUTION) -> Grid:
    x0, x1, y0, y1 = bounds
    step_x = (x1 - x0) / resolution
    step_y = (y1 - y0) / resolution
    xs = x0 + step_x * (np.arange(resolution) + 0.5)
    ys = y0 + step_y * (np.arange(resolution) + 0.5)
    gx, gy = np.meshgrid(xs, ys)
    labels = np.asarray(predict(np.column_stack([gx.ravel(), gy.ravel()]))).reshape(resolution, resolution)
    return Grid(xs, ys, labels, (x0, x1, y0, y1))


def _fmt(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _marker(shape: int, cx: float, cy: float, color: str, fill: str) -> str:
    r = 3.5
    attrs = f'fill="{fill}" stroke="{color}" stroke-width="1.2"'
    kind = shape % 4
    if kind == 0:
        return f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" {attrs}/>'
    if kind == 1:
        return f'<rect x="{_fmt(cx - r)}" y="{_fmt(cy - r)}" width="{_fmt(2 * r)}" height="{_fmt(2 * r)}" {attrs}/>'
    if kind == 2:
        pts = [(cx, cy - r * 1.2), (cx - r * 1.1, cy + r * 0.8), (cx + r * 1.1, cy + r * 0.8)]
    else:
        pts = [(cx, cy - r * 1.3), (cx + r * 1.3, cy), (cx, cy + r * 1.3), (cx - r * 1.3, cy)]
    return f'<polygon points="{" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)}" {attrs}/>'


def render_svg(
    data: LabeledDataset,
    predict: Predictor,
    title: str = "",
    resolution: int = GRID_RESOLUTION,
) -> str:
    """SVG showing predicted regions, the decision boundary and the patterns.

    Marker colour is the true class, marker shape the predicted class;
    misclassified patterns are drawn hollow.
    """
    if data.dimension != 2:
        raise UnsupportedPlotError(f"decision regions need 2-D data, got {data.dimension} features")
    bounds = bounding_box(data.patterns)
    grid = decision_grid(predict, bounds, resolution)
    pred = np.asarray(predict(data.patterns))

    margin, size = 40, 400
    cell = size / resolution
    width, height = size + 2 * margin, size + 2 * margin + 20
    top = margin + 20
    x0, x1, y0, y1 = bounds

    def px(x):
        return margin + (x - x0) / (x1 - x0) * size

    def py(y):
        return top + (y1 - y) / (y1 - y0) * size

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:g}" y="{margin - 8}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{escape(title)}</text>')

    out.append('<g id="regions" shape-rendering="crispEdges">')
    labels = grid.labels
    for i in range(resolution):
        y_px = top + (resolution - 1 - i) * cell
        row = labels[i]
        start = 0
        for j in range(1, resolution + 1):
            if j == resolution or row[j] != row[start]:
                fill = _FILL[int(row[start]) % len(_FILL)]
                out.append(f'<rect x="{_fmt(margin + start * cell)}" y="{_fmt(y_px)}" '
                           f'width="{_fmt((j - start) * cell)}" height="{_fmt(cell)}" fill="{fill}"/>')
                start = j
    out.append("</g>")

    # Unit cell edges wherever neighbouring labels differ.
    segs = []
    for i in range(resolution):
        y_top = top + (resolution - 1 - i) * cell
        changes = np.flatnonzero(labels[i, 1:] != labels[i, :-1])
        segs.extend(f"M{_fmt(margin + (j + 1) * cell)} {_fmt(y_top)}v{_fmt(cell)}" for j in changes)
    for j in range(resolution):
        changes = np.flatnonzero(labels[1:, j] != labels[:-1, j])
        segs.extend(f"M{_fmt(margin + j * cell)} {_fmt(top + (resolution - 1 - i) * cell)}h{_fmt(cell)}" for i in changes)
    if segs:
        out.append(f'<path id="boundary" d="{"".join(segs)}" fill="none" stroke="#222222" stroke-width="1.5"/>')

    out.append(f'<rect x="{margin}" y="{top}" width="{size}" height="{size}" fill="none" stroke="#444444"/>')
    out.append('<g id="patterns">')
    for (x, y), t, p in zip(data.patterns.tolist(), data.labels.tolist(), pred.tolist()):
        color = _INK[t % len(_INK)]
        fill = color if t == p else "none"
        out.append(_marker(int(p), px(x), py(y), color, fill))
    out.append("</g>")

    axis = (f'<text x="{margin}" y="{top + size + 16}" font-family="sans-serif" font-size="10">{_fmt(x0)}</text>'
            f'<text x="{margin + size}" y="{top + size + 16}" text-anchor="end" font-family="sans-serif" '
            f'font-size="10">{_fmt(x1)}</text>'
            f'<text x="{margin - 4}" y="{top + size}" text-anchor="end" font-family="sans-serif" '
            f'font-size="10">{_fmt(y0)}</text>'
            f'<text x="{margin - 4}" y="{top + 8}" text-anchor="end" font-family="sans-serif" '
            f'font-size="10">{_fmt(y1)}</text>')
    out.append(axis)
    out.append("</svg>")
    return "\n".join(out) + "\n"
