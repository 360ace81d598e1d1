"""Page cleanup: 3x3 median smoothing and two-cluster fuzzy C-means
binarization of the smoothed page into ink and background."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .raster import check_gray_image


@dataclass(frozen=True)
class FcmParams:
    """Fuzzy C-means settings for ink/background binarization.

    cluster_count is fixed at 2 (ink vs paper). The fuzzifier is the
    membership exponent m > 1; tolerance is the convergence threshold on
    center movement in gray levels.
    """

    cluster_count: int = 2
    fuzzifier: float = 2.0
    tolerance: float = 1e-3
    max_iterations: int = 100

    def __post_init__(self):
        if self.cluster_count != 2:
            raise ValueError("cluster_count is fixed at 2")
        if not self.fuzzifier > 1:
            raise ValueError("fuzzifier must be > 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass(frozen=True)
class FcmResult:
    """Converged clustering state: final centers, per-iteration objective
    values, and memberships for each distinct intensity present."""

    centers: np.ndarray          # shape (2,), sorted ascending (ink first)
    objective: np.ndarray        # objective value per iteration
    n_iterations: int
    values: np.ndarray           # distinct intensities, ascending
    memberships: np.ndarray      # shape (len(values), 2), rows sum to 1


def median_filter_3x3(img) -> np.ndarray:
    """Smooth a grayscale page with a 3x3 median filter.

    Borders are edge-replicated so every neighborhood has 9 samples;
    zero padding would fabricate dark borders that FCM reads as ink.
    """
    arr = check_gray_image(img)
    return ndimage.median_filter(arr, size=3, mode="nearest")


def _memberships(values: np.ndarray, centers: np.ndarray, m: float) -> np.ndarray:
    dist = np.abs(values[:, None] - centers[None, :])
    u = np.zeros_like(dist)
    hit = dist == 0
    on_center = hit.any(axis=1)
    # Pixel sitting exactly on a center: full membership there. If both
    # centers coincide with it, split evenly.
    if on_center.any():
        u[on_center] = hit[on_center] / hit[on_center].sum(axis=1, keepdims=True)
    rest = ~on_center
    if rest.any():
        p = 2.0 / (m - 1.0)
        inv = dist[rest] ** -p
        u[rest] = inv / inv.sum(axis=1, keepdims=True)
    return u


def fcm_cluster(img, params: FcmParams | None = None,
                init_centers=None) -> FcmResult:
    """Run fuzzy C-means on the 1-D intensity distribution of an image.

    Centers are initialized at the min and max intensity (deterministic);
    iteration alternates membership and center updates until the largest
    center movement drops below tolerance or the iteration cap is hit.
    Intensities are grouped by distinct value, which is algebraically
    identical to per-pixel updates on the scalar feature.
    """
    params = params or FcmParams()
    arr = check_gray_image(img)
    values, counts = np.unique(arr, return_counts=True)
    values = values.astype(np.float64)
    weights = counts.astype(np.float64)
    m = params.fuzzifier

    if len(values) == 1:
        # Constant page: no ink/background contrast, treated as blank.
        centers = np.array([values[0], values[0]])
        return FcmResult(centers, np.zeros(0), 0, values, np.full((1, 2), 0.5))

    if init_centers is None:
        centers = np.array([values[0], values[-1]], dtype=np.float64)
    else:
        centers = np.asarray(init_centers, dtype=np.float64).copy()
        if centers.shape != (2,):
            raise ValueError("init_centers must hold exactly 2 values")
    objective = []
    u = _memberships(values, centers, m)
    for it in range(params.max_iterations):
        um = u**m
        dist2 = (values[:, None] - centers[None, :]) ** 2
        objective.append(float((weights[:, None] * um * dist2).sum()))
        wum = weights[:, None] * um
        new_centers = (wum * values[:, None]).sum(axis=0) / wum.sum(axis=0)
        shift = np.abs(new_centers - centers).max()
        centers = new_centers
        u = _memberships(values, centers, m)
        if shift < params.tolerance:
            break
    n_iter = len(objective)

    order = np.argsort(centers)
    return FcmResult(centers[order], np.asarray(objective), n_iter, values, u[:, order])


def fcm_binarize(img, params: FcmParams | None = None,
                 init_centers=None) -> np.ndarray:
    """Binarize a grayscale page by two-cluster FCM on intensity.

    The cluster with the lower final center is ink. Each pixel goes to its
    higher-membership cluster; ties and degenerate (constant) pages resolve
    to background so a blank page yields no ink.
    """
    arr = check_gray_image(img)
    result = fcm_cluster(arr, params, init_centers=init_centers)
    if len(result.values) == 1:
        return np.zeros_like(arr)
    ink_values = result.values[result.memberships[:, 0] > result.memberships[:, 1]]
    lut = np.zeros(256, dtype=np.uint8)
    lut[ink_values.astype(np.intp)] = 1
    return lut[arr]


def binarize_pipeline(img, params: FcmParams | None = None) -> np.ndarray:
    """Full preprocessing stage: median smoothing then FCM binarization."""
    return fcm_binarize(median_filter_3x3(img), params)
