"""Connected-component labeling and small-artifact cleanup."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .raster import check_binary_image

_STRUCT_4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=np.uint8)
_STRUCT_8 = np.ones((3, 3), dtype=np.uint8)


def _structure(connectivity: int) -> np.ndarray:
    if connectivity == 4:
        return _STRUCT_4
    if connectivity == 8:
        return _STRUCT_8
    raise ValueError(f"connectivity must be 4 or 8, got {connectivity!r}")


@dataclass(frozen=True)
class Component:
    """One connected ink region."""

    id: int
    area: int
    bbox: tuple[int, int, int, int]   # (x_min, y_min, width, height)
    row_extent: tuple[int, int]       # (top row, bottom row), inclusive


@dataclass(frozen=True)
class LabelMap:
    """Labeled partition of the ink pixels; 0 marks background."""

    width: int
    height: int
    labels: np.ndarray                # (height, width) int array
    components: list[Component]       # sorted by id


def label_components(img, connectivity: int = 8) -> LabelMap:
    """Label connected ink regions under 4- or 8-adjacency.

    Labels start at 1 and follow first-encounter raster order, so results
    are stable across runs and implementations.
    """
    arr = check_binary_image(img)
    raw, n = ndimage.label(arr, structure=_structure(connectivity))
    if n == 0:
        return LabelMap(arr.shape[1], arr.shape[0], raw, [])

    # scipy's label order is close to raster order but not contractual;
    # remap by position of each label's first pixel.
    flat = raw.ravel()
    seen, first_idx = np.unique(flat, return_index=True)
    nz = seen != 0
    order = seen[nz][np.argsort(first_idx[nz])]
    remap = np.zeros(n + 1, dtype=raw.dtype)
    remap[order] = np.arange(1, n + 1)
    labels = remap[raw]

    areas = np.bincount(labels.ravel(), minlength=n + 1)
    slices = ndimage.find_objects(labels)
    comps = []
    for i, sl in enumerate(slices, start=1):
        ys, xs = sl
        comps.append(Component(
            id=i,
            area=int(areas[i]),
            bbox=(xs.start, ys.start, xs.stop - xs.start, ys.stop - ys.start),
            row_extent=(ys.start, ys.stop - 1),
        ))
    return LabelMap(arr.shape[1], arr.shape[0], labels, comps)


def clean_isolated(img) -> np.ndarray:
    """Erase ink pixels whose 8-neighborhood holds no other ink pixel."""
    arr = check_binary_image(img)
    neighbors = ndimage.convolve(arr.astype(np.int32), _STRUCT_8.astype(np.int32),
                                 mode="constant", cval=0) - arr
    return (arr & (neighbors > 0)).astype(np.uint8)


def remove_small(img, min_area: int, connectivity: int = 8) -> np.ndarray:
    """Erase connected components with area below min_area."""
    if min_area < 1:
        raise ValueError("min_area must be >= 1")
    arr = check_binary_image(img)
    if min_area == 1:
        return arr.copy()
    lmap = label_components(arr, connectivity)
    if not lmap.components:
        return arr.copy()
    keep = np.zeros(len(lmap.components) + 1, dtype=bool)
    for comp in lmap.components:
        keep[comp.id] = comp.area >= min_area
    return keep[lmap.labels].astype(np.uint8)
