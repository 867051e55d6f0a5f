"""Per-pixel feature maps for keypoint proposal."""
from __future__ import annotations

import hashlib
from typing import Protocol

import numpy as np

FEATURE_DIM = 16


class FeatureProvider(Protocol):
    def __call__(self, view) -> np.ndarray:
        """(height, width, F) float features for a rendered view."""


def label_embedding(object_id: int, part_id: int, dim: int) -> np.ndarray:
    """Unit vector fixed by the (object, part) label, stable across runs."""
    digest = hashlib.blake2b(f"{object_id}:{part_id}".encode(), digest_size=8).digest()
    v = np.random.default_rng(int.from_bytes(digest, "little")).standard_normal(dim)
    return v / np.linalg.norm(v)


class SyntheticFeatures:
    """Label hash embedding plus two channels of normalised in-mask position.

    Stands in for a learned dense descriptor: constant within a part, so
    clustering inside a mask is driven by position and depth.
    """

    def __init__(self, dim: int = FEATURE_DIM):
        if dim < 3:
            raise ValueError("feature dim must be >= 3")
        self.dim = dim
        self._cache: dict[tuple[int, int], np.ndarray] = {}

    def _embed(self, obj: int, part: int) -> np.ndarray:
        key = (obj, part)
        if key not in self._cache:
            self._cache[key] = label_embedding(obj, part, self.dim - 2)
        return self._cache[key]

    def __call__(self, view) -> np.ndarray:
        labels = view.pixel_labels
        H, W = labels.shape[:2]
        out = np.zeros((H, W, self.dim))
        fg = labels[..., 0] >= 0
        if not fg.any():
            return out
        keys = np.unique(labels[fg].reshape(-1, 2), axis=0)
        for obj, part in keys:
            rows, cols = np.nonzero(fg & (labels[..., 0] == obj) & (labels[..., 1] == part))
            out[rows, cols, : self.dim - 2] = self._embed(int(obj), int(part))
            out[rows, cols, self.dim - 2] = _normalise(cols)
            out[rows, cols, self.dim - 1] = _normalise(rows)
        return out


def _normalise(x: np.ndarray) -> np.ndarray:
    lo, hi = x.min(), x.max()
    if hi == lo:
        return np.full(x.shape, 0.5)
    return (x - lo) / (hi - lo)
