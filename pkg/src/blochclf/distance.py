"""Trace distance and its normalized variants.

The normalized trace distance rescales the ordinary trace distance between
two density patterns so that it coincides with the Euclidean distance of the
underlying feature vectors.  The normalization factor uses ``rho[1, 1]``,
which equals ``(1 - r_3) / 2`` but is computed without cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .encoding import DensityPattern, GeneralizedDensityPattern, _one_minus_last, as_feature_vector
from .errors import NORTH_POLE_TOL, DimensionMismatchError, SingularNormalizationError
from .linalg import eigvalsh, trace_norm2


def _matrix(rho) -> np.ndarray:
    return np.asarray(rho.matrix if hasattr(rho, "matrix") else rho)


def trace_distance(rho_a, rho_b) -> float:
    """``1/2 * sum |eig(rho_a - rho_b)|`` for density matrices of equal size.

    Accepts raw arrays or anything carrying a ``.matrix``.
    """
    a, b = _matrix(rho_a), _matrix(rho_b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"cannot compare density matrices of shapes {a.shape} and {b.shape}")
    diff = a - b
    if a.shape[0] == 2:
        return 0.5 * float(trace_norm2(diff))
    return 0.5 * float(np.abs(eigvalsh(diff)).sum())


def trace_distances(patterns: np.ndarray, rho) -> np.ndarray:
    """Trace distance from each matrix in a ``(N, 2, 2)`` stack to ``rho``."""
    patterns = np.asarray(patterns)
    c = _matrix(rho)
    if patterns.shape[1:] != c.shape or c.shape != (2, 2):
        raise DimensionMismatchError(f"expected (N, 2, 2) stack and a 2x2 matrix, got {patterns.shape} and {c.shape}")
    return 0.5 * trace_norm2(patterns - c)


@dataclass(frozen=True)
class TraceDistanceBreakdown:
    raw: float
    factor: float
    normalized: float
    eigenvalue_magnitude: float


def normalization_factor(rho_a: DensityPattern, rho_b: DensityPattern) -> float:
    """``K = 2 / sqrt((1 - r_a3)(1 - r_b3))``."""
    wa, wb = rho_a.south_weight, rho_b.south_weight
    # 1 - r_3 = 2 * rho[1, 1]
    if 2.0 * wa < NORTH_POLE_TOL or 2.0 * wb < NORTH_POLE_TOL:
        raise SingularNormalizationError("normalization factor diverges at the north pole")
    return 1.0 / math.sqrt(wa * wb)


def normalized_trace_distance(rho_a: DensityPattern, rho_b: DensityPattern) -> TraceDistanceBreakdown:
    """Trace distance scaled to equal the Euclidean distance of the preimages."""
    factor = normalization_factor(rho_a, rho_b)
    diff = np.asarray(rho_a.matrix) - np.asarray(rho_b.matrix)
    lo, hi = _eigvalsh2_scalar(diff)
    raw = 0.5 * (abs(lo) + abs(hi))
    return TraceDistanceBreakdown(
        raw=raw,
        factor=factor,
        normalized=factor * raw,
        eigenvalue_magnitude=max(abs(lo), abs(hi)),
    )


def _eigvalsh2_scalar(a: np.ndarray) -> tuple[float, float]:
    p = a[0, 0].real
    s = a[1, 1].real
    q = a[0, 1]
    mean = 0.5 * (p + s)
    radius = math.hypot(0.5 * (p - s), abs(q))
    return float(mean - radius), float(mean + radius)


def euclidean_distance(a, b) -> float:
    u, v = as_feature_vector(a), as_feature_vector(b)
    if u.size != v.size:
        raise DimensionMismatchError(f"vectors of length {u.size} and {v.size}")
    return math.dist(u.tolist(), v.tolist())


Variant = Literal["verbatim", "sqrt_denominator", "exact"]


def generalized_normalized_trace_distance(
    rho_a: GeneralizedDensityPattern | DensityPattern,
    rho_b: GeneralizedDensityPattern | DensityPattern,
    variant: Variant = "verbatim",
) -> float:
    """Normalized trace distance written in Pauli components, for ``m`` features.

    With ``L = m + 1`` the last relevant component:

    ``verbatim``
        ``sqrt(sum_i [(a_i - b_i) - (a_i a_L - b_i a_L)]^2) / ((1 - a_L)(1 - b_L))``.
        Not symmetric in its arguments.
    ``sqrt_denominator``
        Same numerator over ``sqrt((1 - a_L)(1 - b_L))``.
    ``exact``
        ``sqrt(sum_i [(a_i - b_i) - (a_i b_L - b_i a_L)]^2) / ((1 - a_L)(1 - b_L))``,
        which is the Euclidean distance between the two preimages.
    """
    m = rho_a.feature_count
    if rho_b.feature_count != m or np.shape(rho_a.matrix) != np.shape(rho_b.matrix):
        raise DimensionMismatchError("patterns live in different spaces")
    ra = np.asarray(rho_a.bloch[: m + 1], dtype=float)
    rb = np.asarray(rho_b.bloch[: m + 1], dtype=float)
    ga, gb = _one_minus_last(ra), _one_minus_last(rb)
    if ga < NORTH_POLE_TOL or gb < NORTH_POLE_TOL:
        raise SingularNormalizationError("denominator vanishes at the north pole")
    a_head, b_head = ra[:-1], rb[:-1]
    a_last = ra[-1]

    if variant == "exact":
        # a_i (1 - b_L) - b_i (1 - a_L), with the gaps taken cancellation-free
        terms = a_head * gb - b_head * ga
    elif variant in ("verbatim", "sqrt_denominator"):
        terms = (a_head - b_head) - (a_head * a_last - b_head * a_last)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    numerator = math.sqrt(float(np.dot(terms, terms)))
    denominator = ga * gb
    if variant == "sqrt_denominator":
        denominator = math.sqrt(denominator)
    return numerator / denominator
