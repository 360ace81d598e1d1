"""Text line detection on the separated text image.

The text image is smoothed with a Gaussian, smeared row-wise with 1xW
blocks (black run-length smearing), cleaned of isolated points and small
smears, and labeled. Each component usually is one line; components tall
enough to hold merged lines are split at horizontal-histogram minima that
show a drastic valley-to-peak change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import ndimage

from .components import Component, clean_isolated, label_components, remove_small
from .raster import check_binary_image


@dataclass(frozen=True)
class SmearParams:
    block_width_w: int = 20          # 1xW smearing block width
    block_ink_threshold_t: int = 2   # block fills when ink count exceeds this
    gaussian_sigma: float = 1.0
    min_smear_area: int = 150        # px; smaller smear components dropped
    valley_threshold_t2: int = 5     # rows below this count are valleys
    overlap_height_ratio: float = 1.6  # vs median height; taller may be merged lines

    def __post_init__(self):
        if self.block_width_w < 2:
            raise ValueError("block_width_w must be >= 2")
        if self.block_ink_threshold_t < 1:
            raise ValueError("block_ink_threshold_t must be >= 1")
        if not self.block_ink_threshold_t < self.block_width_w:
            raise ValueError("block_ink_threshold_t must be < block_width_w")
        if not self.gaussian_sigma > 0:
            raise ValueError("gaussian_sigma must be > 0")
        if self.min_smear_area < 1:
            raise ValueError("min_smear_area must be >= 1")
        if self.valley_threshold_t2 < 0:
            raise ValueError("valley_threshold_t2 must be >= 0")
        if not self.overlap_height_ratio > 1:
            raise ValueError("overlap_height_ratio must be > 1")


class LineBox(NamedTuple):
    """Axis-aligned line rectangle, origin at the page's top-left."""

    x: int
    y: int
    width: int
    height: int


def gaussian_smooth(img, sigma: float = 1.0) -> np.ndarray:
    """Smooth a binary image with a normalized Gaussian and re-binarize.

    Ink is treated as 1.0, background as 0.0; the kernel radius is
    ceil(3*sigma) with edge-replicated borders, and the result is
    thresholded at 0.5.
    """
    if not sigma > 0:
        raise ValueError("sigma must be > 0")
    arr = check_binary_image(img)
    radius = math.ceil(3 * sigma)
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(offsets**2) / (2 * sigma**2))
    kernel /= kernel.sum()
    smooth = ndimage.convolve1d(arr.astype(np.float64), kernel, axis=0, mode="nearest")
    smooth = ndimage.convolve1d(smooth, kernel, axis=1, mode="nearest")
    return (smooth >= 0.5).astype(np.uint8)


def smear(img, params: SmearParams | None = None) -> np.ndarray:
    """Black run-length smearing with non-overlapping 1xW blocks.

    Each row is tiled left to right; a block whose ink count exceeds the
    threshold is filled solid. The final partial block is judged at its own
    width. Rows are independent.
    """
    params = params or SmearParams()
    arr = check_binary_image(img)
    h, w = arr.shape
    starts = np.arange(0, w, params.block_width_w)
    counts = np.add.reduceat(arr, starts, axis=1)
    widths = np.diff(np.append(starts, w))
    fill = counts > params.block_ink_threshold_t
    filled = np.repeat(fill, widths, axis=1)
    return (arr | filled).astype(np.uint8)


def horizontal_histogram(img) -> np.ndarray:
    """Per-row ink pixel counts (the projection profile)."""
    arr = check_binary_image(img)
    return arr.sum(axis=1, dtype=np.int64)


def classify_rows(hist, params: SmearParams | None = None) -> np.ndarray:
    """Tag each row as valley (True) or peak-zone (False).

    A valley row has fewer ink pixels than the T2 threshold; valleys are the
    inter-line white gaps.
    """
    params = params or SmearParams()
    hist = np.asarray(hist)
    return hist < params.valley_threshold_t2


def split_overlapping(comp: Component, hist, median_height: int,
                      params: SmearParams | None = None) -> list[tuple[int, int]]:
    """Split a component's row extent where merged text lines meet.

    Components no taller than overlap_height_ratio times the median height
    stay whole. Otherwise the interior histogram minimum (outer 25% of the
    extent excluded, to spare ascenders and descenders) is a cut when the
    maxima above and below it both exceed max(2 * minimum, T2) -- the
    drastic valley-to-peak change. Valid cuts recurse into both halves.
    """
    params = params or SmearParams()
    if median_height < 1:
        raise ValueError("median_height must be >= 1")
    hist = np.asarray(hist)
    top, bottom = comp.row_extent
    if len(hist) != bottom - top + 1:
        raise ValueError("histogram must cover exactly the component's row extent")

    def rec(lo: int, hi: int) -> list[tuple[int, int]]:
        height = hi - lo + 1
        if height <= params.overlap_height_ratio * median_height:
            return [(lo, hi)]
        margin = int(height * 0.25)
        c_lo, c_hi = lo + margin, hi - margin
        if c_lo > c_hi:
            return [(lo, hi)]
        seg = hist[c_lo - top : c_hi - top + 1]
        m = c_lo + int(np.argmin(seg))
        floor = max(2 * int(hist[m - top]), params.valley_threshold_t2)
        above = hist[lo - top : m - top]
        below = hist[m - top + 1 : hi - top + 1]
        if len(above) == 0 or len(below) == 0:
            return [(lo, hi)]
        if above.max() > floor and below.max() > floor:
            return rec(lo, m) + rec(m + 1, hi)
        return [(lo, hi)]

    return rec(top, bottom)


def detect_lines(text, params: SmearParams | None = None,
                 connectivity: int = 8) -> list[LineBox]:
    """Detect text lines on a binary text image.

    Pipeline: Gaussian smoothing, 1xW smearing, isolated-point cleanup,
    small-smear removal, component labeling, and per-component overlap
    splitting against the median component height. Boxes bound the smeared
    regions and are sorted top-to-bottom, then left-to-right.
    """
    params = params or SmearParams()
    arr = check_binary_image(text)
    smeared = gaussian_smooth(arr, params.gaussian_sigma)
    smeared = smear(smeared, params)
    smeared = clean_isolated(smeared)
    smeared = remove_small(smeared, params.min_smear_area, connectivity)
    lmap = label_components(smeared, connectivity)
    if not lmap.components:
        return []

    median_height = int(np.median([c.bbox[3] for c in lmap.components]))
    median_height = max(median_height, 1)
    boxes = []
    for comp in lmap.components:
        x, y, w, h = comp.bbox
        comp_rows = (lmap.labels[y : y + h] == comp.id).sum(axis=1, dtype=np.int64)
        for top, bottom in split_overlapping(comp, comp_rows, median_height, params):
            boxes.append(LineBox(x, top, w, bottom - top + 1))
    boxes.sort(key=lambda b: (b.y, b.x))
    return boxes
