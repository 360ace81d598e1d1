"""Separation of text from doodles and struck-out lines.

Doodles are large, dense, well-connected ink regions; handwriting is made
of thin elongated strokes. A component is flagged as doodle when it is big
enough outright or when enough of its pixels sit in saturated 5x5 windows.
Struck-out lines are long straight runs in one of four directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .components import LabelMap, label_components
from .raster import check_binary_image


@dataclass(frozen=True)
class SeparationParams:
    density_window: int = 5
    density_threshold_t1: int = 20       # ink count a 5x5 window must exceed
    doodle_area_threshold: int = 3000    # px; bigger components are doodles
    doodle_density_fraction: float = 0.10
    strike_min_run: int = 120            # px; shorter runs are kept

    def __post_init__(self):
        if self.density_window != 5:
            raise ValueError("density_window is fixed at 5")
        if not 0 <= self.density_threshold_t1 <= 25:
            raise ValueError("density_threshold_t1 must be in [0, 25]")
        if self.doodle_area_threshold < 1:
            raise ValueError("doodle_area_threshold must be >= 1")
        if not 0 <= self.doodle_density_fraction <= 1:
            raise ValueError("doodle_density_fraction must be in [0, 1]")
        if self.strike_min_run < 2:
            raise ValueError("strike_min_run must be >= 2")


def density_mask(img, params: SeparationParams | None = None) -> np.ndarray:
    """Mark pixels whose centered 5x5 window holds more than T1 ink pixels.

    Windows slide with stride 1 over the interior; pixels within 2 of the
    border (no full window) are never marked. Images smaller than 5x5 give
    an empty mask.
    """
    params = params or SeparationParams()
    arr = check_binary_image(img)
    h, w = arr.shape
    mask = np.zeros((h, w), dtype=np.uint8)
    if h < 5 or w < 5:
        return mask
    windows = np.lib.stride_tricks.sliding_window_view(arr, (5, 5))
    counts = windows.sum(axis=(2, 3))
    mask[2 : h - 2, 2 : w - 2] = counts > params.density_threshold_t1
    return mask


def classify_components(labels: LabelMap, mask,
                        params: SeparationParams | None = None
                        ) -> tuple[set[int], set[int]]:
    """Partition component ids into (text, doodle).

    Either cue alone is enough to call a component a doodle: area above the
    size threshold, or a dense-window pixel fraction at or above the density
    fraction.
    """
    params = params or SeparationParams()
    mask = check_binary_image(mask)
    if (labels.height, labels.width) != mask.shape:
        raise ValueError("label map and mask dimensions differ")
    text: set[int] = set()
    doodle: set[int] = set()
    if not labels.components:
        return text, doodle
    n = len(labels.components)
    marked = np.bincount(labels.labels.ravel(), weights=mask.ravel().astype(np.float64),
                         minlength=n + 1)
    for comp in labels.components:
        dense_frac = marked[comp.id] / comp.area
        if comp.area > params.doodle_area_threshold or dense_frac >= params.doodle_density_fraction:
            doodle.add(comp.id)
        else:
            text.add(comp.id)
    return text, doodle


def _mark_runs_1d(line: np.ndarray, min_run: int, out: np.ndarray) -> None:
    # line and out are aligned 1-D views; mark maximal ink runs >= min_run.
    padded = np.concatenate(([0], line, [0]))
    edges = np.flatnonzero(np.diff(padded))
    for start, stop in zip(edges[::2], edges[1::2]):
        if stop - start >= min_run:
            out[start:stop] = 1


def remove_struck_lines(img, params: SeparationParams | None = None) -> np.ndarray:
    """Erase long straight ink runs in the horizontal, vertical and both
    45-degree diagonal directions.

    Runs are measured on the input and all erasures applied at once, so the
    four directional scans are order-independent.
    """
    params = params or SeparationParams()
    arr = check_binary_image(img)
    h, w = arr.shape
    erase = np.zeros_like(arr)

    for r in range(h):
        _mark_runs_1d(arr[r], params.strike_min_run, erase[r])
    for c in range(w):
        _mark_runs_1d(arr[:, c], params.strike_min_run, erase[:, c])

    flipped = arr[:, ::-1]
    erase_flipped = erase[:, ::-1]
    for off in range(-(h - 1), w):
        diag = np.ascontiguousarray(np.diagonal(arr, offset=off))
        if len(diag) >= params.strike_min_run:
            out = np.zeros_like(diag)
            _mark_runs_1d(diag, params.strike_min_run, out)
            r0, c0 = (max(0, -off), max(0, off))
            idx = np.flatnonzero(out)
            erase[r0 + idx, c0 + idx] = 1
        adiag = np.ascontiguousarray(np.diagonal(flipped, offset=off))
        if len(adiag) >= params.strike_min_run:
            out = np.zeros_like(adiag)
            _mark_runs_1d(adiag, params.strike_min_run, out)
            r0, c0 = (max(0, -off), max(0, off))
            idx = np.flatnonzero(out)
            erase_flipped[r0 + idx, c0 + idx] = 1

    return (arr & ~erase).astype(np.uint8)


def separate(img, params: SeparationParams | None = None,
             connectivity: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """Split a binary page into (text, doodle) images.

    Struck-out lines are removed first so a strike-through fused with a word
    cannot inflate that word's component. The two outputs are pixelwise
    disjoint and together reproduce the strike-removed input.
    """
    params = params or SeparationParams()
    cleaned = remove_struck_lines(img, params)
    labels = label_components(cleaned, connectivity)
    mask = density_mask(cleaned, params)
    _, doodle_ids = classify_components(labels, mask, params)
    keep = np.zeros(len(labels.components) + 1, dtype=bool)
    for comp in labels.components:
        keep[comp.id] = comp.id in doodle_ids
    doodle = keep[labels.labels].astype(np.uint8)
    text = (cleaned & ~doodle).astype(np.uint8)
    return text, doodle
