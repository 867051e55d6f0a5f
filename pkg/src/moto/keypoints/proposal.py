"""Keypoint proposals: k-means inside each part mask."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from moto.errors import DomainError


@dataclass(frozen=True, eq=False)
class KeypointProposal:
    view_id: str
    pixel: tuple[int, int]  # (u, v) = (column, row)
    mask_id: tuple[int, int]  # (object_id, part_id)
    feature: np.ndarray


def propose_keypoints(view, features: np.ndarray, k_per_mask: int = 3, seed: int = 0) -> list[KeypointProposal]:
    """Cluster each part mask on [features, depth / max_depth] and return,
    per cluster, the mask pixel nearest the cluster centre.

    Masks are visited in (object_id, part_id) order and proposals within a
    mask are sorted by (u, v), so output order is canonical.
    """
    if view.pixel_labels is None or view.depth is None:
        raise DomainError(f"view {view.view_id} has not been rendered")
    labels = view.pixel_labels
    H, W = labels.shape[:2]
    if features.shape[:2] != (H, W):
        raise DomainError(f"feature map {features.shape[:2]} does not match view {(H, W)}")
    if k_per_mask < 1:
        raise DomainError("k_per_mask must be >= 1")
    fg = labels[..., 0] >= 0
    if not fg.any():
        return []
    max_depth = float(np.nanmax(view.depth[fg]))
    masks = np.unique(labels[fg].reshape(-1, 2), axis=0)
    out: list[KeypointProposal] = []
    for obj, part in masks:
        rows, cols = np.nonzero(fg & (labels[..., 0] == obj) & (labels[..., 1] == part))
        # canonical pixel order: u, then v
        order = np.lexsort((rows, cols))
        rows, cols = rows[order], cols[order]
        X = np.column_stack([features[rows, cols], view.depth[rows, cols] / max_depth])
        k = min(k_per_mask, len(np.unique(X, axis=0)))
        if k == 1:
            centres = X.mean(axis=0, keepdims=True)
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ConvergenceWarning)
                km = KMeans(n_clusters=k, n_init=4, random_state=seed).fit(X)
            centres = km.cluster_centers_
        chosen = set()
        for c in centres:
            d = np.sum((X - c) ** 2, axis=1)
            chosen.add(int(np.argmin(d)))  # first minimum = lowest (u, v)
        for i in sorted(chosen):
            out.append(
                KeypointProposal(view.view_id, (int(cols[i]), int(rows[i])), (int(obj), int(part)), features[rows[i], cols[i]].copy())
            )
    return out
