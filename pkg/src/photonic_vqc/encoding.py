"""Amplitude encoding of classical features into 4-mode photonic states."""

from __future__ import annotations

import numpy as np


def encode_2d(x1, x2) -> np.ndarray:
    """Encode a 2D feature point as the product-state amplitude vector

        (cos x1 cos x2, cos x1 sin x2, sin x1 cos x2, sin x1 sin x2).

    Accepts scalars or equal-shape arrays; amplitudes are stacked along the
    last axis.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if not (np.all(np.isfinite(x1)) and np.all(np.isfinite(x2))):
        raise ValueError("encode_2d requires finite inputs")
    return np.stack(
        [
            np.cos(x1) * np.cos(x2),
            np.cos(x1) * np.sin(x2),
            np.sin(x1) * np.cos(x2),
            np.sin(x1) * np.sin(x2),
        ],
        axis=-1,
    )


def reduce_iris(features) -> np.ndarray:
    """4D -> 3D reduction (y1, y2, y3) = (x1, x2 + x3, x3 + x4).

    Works on a single 4-vector or an (N, 4) array.
    """
    f = np.asarray(features, dtype=float)
    if f.shape[-1] != 4:
        raise ValueError(f"expected 4 features on the last axis, got {f.shape}")
    return np.stack(
        [f[..., 0], f[..., 1] + f[..., 2], f[..., 2] + f[..., 3]], axis=-1
    )


def encode_3d(y1, y2, y3) -> np.ndarray:
    """Encode reduced 3D features as

        (cos y1 cos y2, cos y1 sin y2, sin y1 cos y3, sin y1 sin y3).

    Unit norm by the trig identity cos^2 y1 + sin^2 y1 = 1.
    """
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    y3 = np.asarray(y3, dtype=float)
    if not all(np.all(np.isfinite(y)) for y in (y1, y2, y3)):
        raise ValueError("encode_3d requires finite inputs")
    return np.stack(
        [
            np.cos(y1) * np.cos(y2),
            np.cos(y1) * np.sin(y2),
            np.sin(y1) * np.cos(y3),
            np.sin(y1) * np.sin(y3),
        ],
        axis=-1,
    )


def scale_features(raw, per_feature_min, per_feature_max, target_max) -> np.ndarray:
    """Affine per-feature map of [min, max] onto [0, target_max].

    Values outside the stated range are clamped, so test-time outliers stay
    inside the valid encoder quadrant.
    """
    raw = np.asarray(raw, dtype=float)
    lo = np.asarray(per_feature_min, dtype=float)
    hi = np.asarray(per_feature_max, dtype=float)
    if np.any(lo >= hi):
        raise ValueError("per-feature min must be strictly below max")
    clipped = np.clip(raw, lo, hi)
    return (clipped - lo) / (hi - lo) * target_max
