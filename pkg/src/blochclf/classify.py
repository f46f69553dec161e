"""Nearest Mean Classifier, its discriminant functions, and the Quantum Classifier.

Both classifiers pick the class whose centroid is nearest; ties go to the
lowest class index (``np.argmin`` keeps the first minimum).  The pairwise
discriminant functions are two-class analysis tools and are not used for
prediction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .distance import trace_distances
from .encoding import ArrayLike, DensityPattern, as_feature_vector, bloch_components, encode_batch
from .errors import (
    ACCUM_TOL,
    NORTH_POLE_TOL,
    DimensionMismatchError,
    InvalidInputError,
    SingularNormalizationError,
    TrainingError,
)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Patterns as rows of a float array, labels as ``0..class_count-1``.

    ``label_values`` keeps the original labels when they were remapped on load.
    """

    patterns: np.ndarray
    labels: np.ndarray
    class_count: int = 0
    label_values: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        X = np.asarray(self.patterns, dtype=float)
        y = np.asarray(self.labels)
        if X.ndim != 2:
            raise InvalidInputError(f"patterns must be a 2-D array, got shape {X.shape}")
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise InvalidInputError(f"{X.shape[0]} patterns but labels of shape {y.shape}")
        if X.shape[0] == 0:
            raise InvalidInputError("dataset is empty")
        if not np.all(np.isfinite(X)):
            raise InvalidInputError("patterns contain non-finite values")
        if not np.issubdtype(y.dtype, np.integer):
            if not np.all(np.equal(np.mod(y, 1), 0)):
                raise InvalidInputError("labels must be integers")
        y = y.astype(np.int64)
        count = self.class_count or int(y.max()) + 1
        if y.min() < 0 or y.max() >= count:
            raise InvalidInputError(f"labels must lie in 0..{count - 1}")
        object.__setattr__(self, "patterns", _readonly(X))
        object.__setattr__(self, "labels", _readonly(y))
        object.__setattr__(self, "class_count", count)

    def __len__(self) -> int:
        return self.patterns.shape[0]

    @property
    def dimension(self) -> int:
        return self.patterns.shape[1]

    def class_sizes(self) -> list[int]:
        return np.bincount(self.labels, minlength=self.class_count).tolist()

    def members(self, label: int) -> np.ndarray:
        return self.patterns[self.labels == label]

    def subset(self, index: Sequence[int] | np.ndarray) -> "LabeledDataset":
        index = np.asarray(index, dtype=np.int64)
        return LabeledDataset(self.patterns[index], self.labels[index], self.class_count, self.label_values)


def _class_members(data: LabeledDataset) -> list[np.ndarray]:
    groups = [data.members(k) for k in range(data.class_count)]
    empty = [k for k, g in enumerate(groups) if len(g) == 0]
    if empty:
        raise TrainingError(f"classes without training patterns: {empty}")
    return groups


def _as_rows(X, dimension: int) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != dimension:
        raise DimensionMismatchError(f"model expects {dimension} features, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InvalidInputError("patterns contain non-finite values")
    return X


# ---------------------------------------------------------------------------
# Nearest Mean Classifier
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NmcModel:
    centroids: np.ndarray

    @property
    def class_count(self) -> int:
        return self.centroids.shape[0]

    @property
    def dimension(self) -> int:
        return self.centroids.shape[1]


def train_nmc(data: LabeledDataset) -> NmcModel:
    centroids = np.stack([g.mean(axis=0) for g in _class_members(data)])
    return NmcModel(_readonly(centroids))


def predict_nmc(model: NmcModel, X) -> np.ndarray:
    X = _as_rows(X, model.dimension)
    sq = ((X[:, None, :] - model.centroids[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(sq, axis=1)


def classify_nmc(model: NmcModel, v: ArrayLike) -> int:
    return int(predict_nmc(model, as_feature_vector(v))[0])


def discriminant_function(a_star: ArrayLike, b_star: ArrayLike, v: ArrayLike) -> float:
    """Classical two-class discriminant; positive means ``v`` is nearer ``a_star``.

    >>> discriminant_function([1, 0], [-1, 0], [2, 5])
    8.0
    """
    a, b, c = (as_feature_vector(u) for u in (a_star, b_star, v))
    if not a.size == b.size == c.size == 2:
        raise DimensionMismatchError("discriminant_function works on 2-D patterns")
    return float(2.0 * (a[0] - b[0]) * c[0] + 2.0 * (a[1] - b[1]) * c[1] + (b @ b - a @ a))


@dataclass(frozen=True)
class QdfCoefficients:
    """``k_tilde_sq = (1 - r_a3) / (1 - r_b3)`` and ``f = r_a - k_tilde_sq * r_b``."""

    k_tilde_sq: float
    f: tuple[float, float, float]


def qdf_coefficients(rho_a: DensityPattern, rho_b: DensityPattern) -> QdfCoefficients:
    """Coefficients of the quantum discriminant for two pure centroid patterns."""
    wa, wb = rho_a.south_weight, rho_b.south_weight
    if 2.0 * wa < NORTH_POLE_TOL or 2.0 * wb < NORTH_POLE_TOL:
        raise SingularNormalizationError("centroid pattern at the north pole")
    k_sq = wa / wb
    f = np.asarray(rho_a.bloch, dtype=float) - k_sq * np.asarray(rho_b.bloch, dtype=float)
    return QdfCoefficients(k_sq, tuple(float(t) for t in f))


def quantum_discriminant(coeffs: QdfCoefficients, r: ArrayLike) -> float:
    """``f . r + k_tilde_sq - 1`` at a point ``r`` of the Bloch sphere.

    Positive means the pattern behind ``r`` is nearer centroid A.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionMismatchError(f"expected a 3-component Bloch vector, got shape {r.shape}")
    if abs(float(r @ r) - 1.0) > ACCUM_TOL:
        raise InvalidInputError("Bloch vector is not on the unit sphere")
    return float(np.dot(coeffs.f, r) + (coeffs.k_tilde_sq - 1.0))


# ---------------------------------------------------------------------------
# Quantum Classifier
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuantumCentroid:
    """Uniform mixture of a class's density patterns."""

    matrix: np.ndarray
    member_count: int

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    @property
    def bloch(self) -> np.ndarray:
        return bloch_components(self.matrix)


def quantum_centroid(patterns: np.ndarray) -> QuantumCentroid:
    patterns = np.asarray(patterns, dtype=float)
    if patterns.ndim != 2 or patterns.shape[0] == 0:
        raise TrainingError("a quantum centroid needs at least one pattern")
    return QuantumCentroid(_readonly(encode_batch(patterns).mean(axis=0)), patterns.shape[0])


@dataclass(frozen=True, eq=False)
class QcModel:
    quantum_centroids: tuple[QuantumCentroid, ...]

    @property
    def class_count(self) -> int:
        return len(self.quantum_centroids)

    dimension = 2


def train_qc(data: LabeledDataset) -> QcModel:
    if data.dimension != 2:
        raise DimensionMismatchError(f"the quantum classifier encodes 2 features, got {data.dimension}")
    return QcModel(tuple(quantum_centroid(g) for g in _class_members(data)))


def qc_distances(model: QcModel, X) -> np.ndarray:
    """``(N, C)`` trace distances from each encoded pattern to each quantum centroid."""
    rho = encode_batch(_as_rows(X, 2))
    return np.stack([trace_distances(rho, c.matrix) for c in model.quantum_centroids], axis=1)


def predict_qc(model: QcModel, X) -> np.ndarray:
    # Plain trace distance: no normalization factor on this path.
    return np.argmin(qc_distances(model, X), axis=1)


def classify_qc(model: QcModel, v: ArrayLike) -> int:
    return int(predict_qc(model, as_feature_vector(v))[0])


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------

def oracle_combine(preds_a, preds_b, truth) -> np.ndarray:
    """Per pattern, the true label if either classifier got it, else ``preds_a``.

    Its error is the lowest any per-pattern selection between the two can reach.
    """
    a, b, t = (np.asarray(u) for u in (preds_a, preds_b, truth))
    if not a.shape == b.shape == t.shape or a.ndim != 1:
        raise DimensionMismatchError(f"label lists of shapes {a.shape}, {b.shape}, {t.shape}")
    return np.where((a == t) | (b == t), t, a)


def predict(model: NmcModel | QcModel, X) -> np.ndarray:
    if isinstance(model, NmcModel):
        return predict_nmc(model, X)
    if isinstance(model, QcModel):
        return predict_qc(model, X)
    raise TypeError(f"not a model: {type(model).__name__}")


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def model_to_dict(model: NmcModel | QcModel) -> dict:
    """JSON-ready form; complex entries become ``[re, im]`` pairs."""
    if isinstance(model, NmcModel):
        return {"kind": "nmc", "centroids": model.centroids.tolist()}
    if isinstance(model, QcModel):
        return {
            "kind": "qc",
            "centroids": [
                {
                    "members": c.member_count,
                    "matrix": [[[z.real, z.imag] for z in row] for row in c.matrix.tolist()],
                }
                for c in model.quantum_centroids
            ],
        }
    raise TypeError(f"not a model: {type(model).__name__}")


def model_from_dict(obj: dict) -> NmcModel | QcModel:
    kind = obj.get("kind")
    try:
        if kind == "nmc":
            c = np.asarray(obj["centroids"], dtype=float)
            if c.ndim != 2 or not np.all(np.isfinite(c)):
                raise InvalidInputError("NMC centroids must be a finite 2-D array")
            return NmcModel(_readonly(c))
        if kind == "qc":
            cents = []
            for entry in obj["centroids"]:
                pairs = np.asarray(entry["matrix"], dtype=float)
                if pairs.shape != (2, 2, 2):
                    raise InvalidInputError("quantum centroid matrices must be 2x2")
                cents.append(QuantumCentroid(_readonly(pairs[..., 0] + 1j * pairs[..., 1]), int(entry["members"])))
            return QcModel(tuple(cents))
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed model file: {exc}") from None
    raise InvalidInputError(f"unknown model kind {kind!r}")
