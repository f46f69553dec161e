"""Feature vectors <-> Bloch vectors <-> density operators.

A real pattern ``x`` is sent to the unit sphere by inverse stereographic
projection and the resulting point is read as the Bloch vector of a pure
state.  For two features that state is a qubit; for more features the point
is embedded in a larger Hilbert space through the generalized Pauli
(Gell-Mann) basis, with unused components fixed at zero.

Every array handed out by this module is marked read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    EXACT_TOL,
    ACCUM_TOL,
    DimensionMismatchError,
    InvalidInputError,
    SingularPointError,
    UnsupportedDimensionError,
)
from .linalg import eigvalsh

ArrayLike = Sequence[float] | np.ndarray

SUPPORTED_DIMENSIONS = (2, 3)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_feature_vector(v: ArrayLike) -> np.ndarray:
    """Validate ``v`` as a finite, non-empty 1-D real vector."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError(f"feature vector must be 1-D and non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"feature vector has non-finite entries: {arr.tolist()}")
    return arr


# ---------------------------------------------------------------------------
# Stereographic projection
# ---------------------------------------------------------------------------

def inverse_stereographic(v: ArrayLike) -> np.ndarray:
    """Map ``v in R^m`` onto the unit sphere ``S^m`` in ``R^(m+1)``.

    >>> inverse_stereographic([1.0, 3.0]) * 11
    array([2., 6., 9.])
    """
    x = as_feature_vector(v)
    sq = float(np.dot(x, x))
    if not math.isfinite(sq):
        raise InvalidInputError("feature vector too large: squared norm overflows")
    denom = sq + 1.0
    r = np.empty(x.size + 1)
    r[:-1] = 2.0 * x / denom
    r[-1] = (sq - 1.0) / denom
    return _frozen(r)


def _one_minus_last(r: np.ndarray) -> float:
    # For r_last > 0, 1 - r_last cancels; on the sphere it equals
    # sum(r_i^2, i < last) / (1 + r_last), which does not.
    last = float(r[-1])
    if last > 0:
        head = r[:-1]
        return float(np.dot(head, head)) / (1.0 + last)
    return 1.0 - last


def stereographic(r: ArrayLike) -> np.ndarray:
    """Project a unit vector in ``R^(m+1)`` (not the north pole) onto ``R^m``."""
    arr = np.asarray(r, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise InvalidInputError(f"Bloch vector must be 1-D with >= 2 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("Bloch vector has non-finite entries")
    norm_sq = float(np.dot(arr, arr))
    if abs(norm_sq - 1.0) > ACCUM_TOL:
        raise InvalidInputError(f"Bloch vector is not on the unit sphere (|r|^2 = {norm_sq!r})")
    gap = _one_minus_last(arr)
    if gap <= 0.0:
        raise SingularPointError("stereographic projection is undefined at the north pole")
    return _frozen(arr[:-1] / gap)


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

def _pauli() -> tuple[np.ndarray, ...]:
    return (
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    )


def _gell_mann() -> tuple[np.ndarray, ...]:
    s3 = 1.0 / math.sqrt(3.0)
    return (
        np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
        np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex),
        np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]], dtype=complex),
        np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex),
        np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]], dtype=complex),
        np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
        np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]], dtype=complex),
        s3 * np.array([[1, 0, 0], [0, 1, 0], [0, 0, -2]], dtype=complex),
    )


@dataclass(frozen=True, eq=False)
class GeneralizedBasis:
    """The ``n^2 - 1`` traceless Hermitian generators for dimension ``n``,
    normalized so that ``tr(s_i s_j) = 2 delta_ij``."""

    dimension: int
    matrices: tuple[np.ndarray, ...]

    @property
    def stacked(self) -> np.ndarray:
        return np.stack(self.matrices)

    @property
    def coefficient(self) -> float:
        """Weight of the generators in ``rho = (I + c * sum r_i s_i) / n``.

        ``c = sqrt(n (n - 1) / 2)`` gives 1 for qubits and sqrt(3) for qutrits,
        so that pure states have unit Bloch vectors.
        """
        n = self.dimension
        return math.sqrt(n * (n - 1) / 2.0)

    def __len__(self) -> int:
        return len(self.matrices)


_BASES: dict[int, GeneralizedBasis] = {}


def gell_mann_basis(n: int) -> GeneralizedBasis:
    """Pauli matrices for ``n = 2``; the eight Gell-Mann matrices for ``n = 3``.

    Larger dimensions are not provided yet; the generators exist for every
    ``n`` but the component ordering would have to be fixed first.
    """
    if n not in SUPPORTED_DIMENSIONS:
        raise UnsupportedDimensionError(f"no generalized Pauli basis for n = {n}; supported: {SUPPORTED_DIMENSIONS}")
    if n not in _BASES:
        mats = _pauli() if n == 2 else _gell_mann()
        _BASES[n] = GeneralizedBasis(n, tuple(_frozen(m) for m in mats))
    return _BASES[n]


# ---------------------------------------------------------------------------
# Density patterns
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DensityPattern:
    """Pure qubit state assigned to a 2-feature pattern."""

    matrix: np.ndarray
    bloch: np.ndarray

    feature_count = 2

    @property
    def south_weight(self) -> float:
        """``rho[1, 1] = (1 - r_3) / 2 = 1 / (|x|^2 + 1)``, never cancelled."""
        return float(self.matrix[1, 1].real)

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def features(self) -> np.ndarray:
        return stereographic(self.bloch)


def encode(v: ArrayLike) -> DensityPattern:
    """Density pattern of a 2-feature vector.

    >>> rho = encode([1.0, 3.0])
    >>> np.round(rho.matrix * 11, 12)
    array([[10.+0.j,  1.-3.j],
           [ 1.+3.j,  1.+0.j]])
    """
    x = as_feature_vector(v)
    if x.size != 2:
        raise DimensionMismatchError(f"encode expects 2 features, got {x.size}")
    a, b = float(x[0]), float(x[1])
    sq = a * a + b * b
    if not math.isfinite(sq):
        raise InvalidInputError("feature vector too large: squared norm overflows")
    d = sq + 1.0
    matrix = np.array([[sq / d, complex(a, -b) / d], [complex(a, b) / d, 1.0 / d]])
    bloch = np.array([2.0 * a / d, 2.0 * b / d, (sq - 1.0) / d])
    return DensityPattern(_frozen(matrix), _frozen(bloch))


def encode_batch(X: np.ndarray) -> np.ndarray:
    """Density matrices for every row of an ``(N, 2)`` array, shape ``(N, 2, 2)``."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != 2:
        raise DimensionMismatchError(f"encode_batch expects shape (N, 2), got {X.shape}")
    x, y = X[:, 0], X[:, 1]
    sq = x * x + y * y
    denom = sq + 1.0
    out = np.empty((X.shape[0], 2, 2), dtype=complex)
    out[:, 0, 0] = sq / denom
    out[:, 0, 1] = (x - 1j * y) / denom
    out[:, 1, 0] = (x + 1j * y) / denom
    out[:, 1, 1] = 1.0 / denom
    return out


def bloch_components(rho: DensityPattern | np.ndarray) -> np.ndarray:
    """Pauli components of a density matrix, ``r_i`` from ``tr(rho s_i)``.

    Works for mixed states and for the qutrit basis too.
    """
    m = rho.matrix if hasattr(rho, "matrix") else np.asarray(rho)
    n = m.shape[-1]
    basis = gell_mann_basis(n)
    # tr(rho s_j) = 2 c r_j / n
    traces = np.einsum("ij,kji->k", m, basis.stacked).real
    return _frozen(traces * n / (2.0 * basis.coefficient))


@dataclass(frozen=True, eq=False)
class GeneralizedDensityPattern:
    """Density operator of dimension ``n`` for an ``m``-feature pattern.

    ``bloch`` always holds all ``n^2 - 1`` components; the ones past
    ``feature_count + 1`` are the zero padding.
    """

    matrix: np.ndarray
    bloch: np.ndarray
    feature_count: int

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def relevant(self) -> np.ndarray:
        """The ``m + 1`` components produced by the stereographic map."""
        return self.bloch[: self.feature_count + 1]

    def features(self) -> np.ndarray:
        return stereographic(self.relevant)


def admissible_feature_counts(n: int) -> range:
    """Feature counts that embed into dimension ``n`` without using a smaller one."""
    gell_mann_basis(n)
    return range(max(1, (n - 1) ** 2 - 1), n * n - 1)


def density_from_bloch(r: ArrayLike, n: int) -> np.ndarray:
    """``(I + c * sum_i r_i s_i) / n`` for a full-length Bloch vector."""
    basis = gell_mann_basis(n)
    r = np.asarray(r, dtype=float)
    if r.shape != (len(basis),):
        raise DimensionMismatchError(f"dimension {n} needs {len(basis)} Bloch components, got {r.shape}")
    m = np.eye(n, dtype=complex) + basis.coefficient * np.tensordot(r, basis.stacked, axes=1)
    return m / n


def encode_generalized(v: ArrayLike, n: int = 3) -> GeneralizedDensityPattern:
    """Embed an ``m``-feature pattern into an ``n``-dimensional Hilbert space.

    The first ``m + 1`` Bloch components come from the inverse stereographic
    map; the remaining ``n^2 - m - 2`` are fixed at zero.  The resulting
    matrix is Hermitian with unit trace but, for ``n = 3``, need not be
    positive semidefinite.
    """
    x = as_feature_vector(v)
    band = admissible_feature_counts(n)
    if x.size not in band:
        raise DimensionMismatchError(
            f"{x.size} features cannot be embedded in dimension {n}; allowed {band.start}..{band.stop - 1}"
        )
    head = inverse_stereographic(x)
    full = np.zeros(n * n - 1)
    full[: head.size] = head
    return GeneralizedDensityPattern(_frozen(density_from_bloch(full, n)), _frozen(full), x.size)


def check_density(m: np.ndarray, *, pure: bool = False, psd: bool = True) -> None:
    """Raise :class:`InvalidInputError` unless ``m`` is a valid density matrix."""
    m = np.asarray(m)
    if np.max(np.abs(m - m.conj().T)) > EXACT_TOL:
        raise InvalidInputError("matrix is not Hermitian")
    if abs(np.trace(m).real - 1.0) > EXACT_TOL:
        raise InvalidInputError("matrix does not have unit trace")
    if psd:
        if eigvalsh(m).min() < -EXACT_TOL:
            raise InvalidInputError("matrix is not positive semidefinite")
    if pure and abs(np.trace(m @ m).real - 1.0) > ACCUM_TOL:
        raise InvalidInputError("matrix is not a pure state")
