"""Closed-form eigenvalues for small Hermitian matrices.

Both routines broadcast over leading axes, so the same code path serves a
single matrix and a batch of them.
"""

from __future__ import annotations

import numpy as np


def eigvalsh2(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues ``(low, high)`` of Hermitian 2x2 matrices ``a[..., 2, 2]``.

    Roots of ``t^2 - tr(a) t + det(a)`` written as ``mean -/+ radius`` so the
    discriminant is a sum of squares and never goes negative.
    """
    a = np.asarray(a)
    p = a[..., 0, 0].real
    s = a[..., 1, 1].real
    q = a[..., 0, 1]
    mean = 0.5 * (p + s)
    radius = np.hypot(0.5 * (p - s), np.abs(q))
    return mean - radius, mean + radius


def trace_norm2(a: np.ndarray) -> np.ndarray:
    """Sum of absolute eigenvalues of Hermitian 2x2 matrices."""
    a = np.asarray(a)
    p = a[..., 0, 0].real
    s = a[..., 1, 1].real
    mean = 0.5 * (p + s)
    radius = np.hypot(0.5 * (p - s), np.abs(a[..., 0, 1]))
    # |m - r| + |m + r| = 2 max(|m|, r)
    return 2.0 * np.maximum(np.abs(mean), radius)


def eigvalsh3(a: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of Hermitian 3x3 matrices via the trigonometric
    solution of the depressed characteristic cubic.

    Returns an array of shape ``a.shape[:-2] + (3,)``.
    """
    a = np.asarray(a, dtype=complex)
    d0 = a[..., 0, 0].real
    d1 = a[..., 1, 1].real
    d2 = a[..., 2, 2].real
    off = np.abs(a[..., 0, 1]) ** 2 + np.abs(a[..., 0, 2]) ** 2 + np.abs(a[..., 1, 2]) ** 2

    shift = (d0 + d1 + d2) / 3.0
    spread = (d0 - shift) ** 2 + (d1 - shift) ** 2 + (d2 - shift) ** 2 + 2.0 * off
    p = np.sqrt(spread / 6.0)
    safe_p = np.where(p > 0, p, 1.0)

    b0 = (d0 - shift) / safe_p
    b1 = (d1 - shift) / safe_p
    b2 = (d2 - shift) / safe_p
    b01 = a[..., 0, 1] / safe_p
    b02 = a[..., 0, 2] / safe_p
    b12 = a[..., 1, 2] / safe_p
    det = (
        b0 * b1 * b2
        + 2.0 * (b01 * b12 * np.conj(b02)).real
        - b0 * np.abs(b12) ** 2
        - b1 * np.abs(b02) ** 2
        - b2 * np.abs(b01) ** 2
    )
    half_det = 0.5 * det
    phi = np.arccos(np.clip(half_det, -1.0, 1.0)) / 3.0

    hi = shift + 2.0 * p * np.cos(phi)
    lo = shift + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    mid = 3.0 * shift - hi - lo
    out = np.stack([lo, mid, hi], axis=-1)

    # Already diagonal: the diagonal itself is the spectrum.
    diag = np.sort(np.stack([d0, d1, d2], axis=-1), axis=-1)
    return np.where((off == 0)[..., None], diag, out)


def eigvalsh(a: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (batched).

    Closed forms for 2x2 and 3x3, LAPACK otherwise.
    """
    a = np.asarray(a)
    n = a.shape[-1]
    if n == 2:
        lo, hi = eigvalsh2(a)
        return np.stack([lo, hi], axis=-1)
    if n == 3:
        return eigvalsh3(a)
    return np.linalg.eigvalsh(a)
