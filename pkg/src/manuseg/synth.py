"""Synthetic manuscript pages with exact ground truth.

Pages carry horizontal bands of stroke-like marks (thin verticals and
rectangle outlines, so the 5x5 density test reads them as text), an
optional filled-disc doodle in the right margin, an optional horizontal
strike-through, and optional small-angle skew applied as a vertical shear.
Generation is fully deterministic for a given spec and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .config import parse_keyvalues
from .linedetect import LineBox

_TEXT_MARGIN = 20


@dataclass(frozen=True)
class SynthSpec:
    page_width: int = 560
    page_height: int = 1100
    line_count_min: int = 5
    line_count_max: int = 12
    line_height_min: int = 24
    line_height_max: int = 40
    gap_min: int = 24
    gap_max: int = 40
    ink_fill: float = 0.25
    doodle_radius: int = 0        # 0 disables the doodle
    strike_length: int = 0        # 0 disables the strike-through
    skew_degrees: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.page_width < 100 or self.page_height < 100:
            raise ValueError("page must be at least 100x100")
        if not 0 <= self.line_count_min <= self.line_count_max:
            raise ValueError("invalid line_count range")
        if not 1 <= self.line_height_min <= self.line_height_max:
            raise ValueError("invalid line_height range")
        if not 1 <= self.gap_min <= self.gap_max:
            raise ValueError("invalid gap range")
        if not 0 < self.ink_fill <= 1:
            raise ValueError("ink_fill must be in (0, 1]")
        if self.doodle_radius < 0 or self.strike_length < 0:
            raise ValueError("doodle_radius and strike_length must be >= 0")
        if not -10 <= self.skew_degrees <= 10:
            raise ValueError("skew_degrees must be in [-10, 10]")


def load_synth_spec(path) -> SynthSpec:
    raw = parse_keyvalues(path)
    types = {f.name: f.type for f in fields(SynthSpec)}
    kwargs = {}
    for key, value in raw.items():
        if key not in types:
            raise ValueError(f"unknown generator key {key!r}")
        caster = float if types[key] in (float, "float") else int
        kwargs[key] = caster(value)
    return SynthSpec(**kwargs)


def _draw_mark(mask: np.ndarray, rng: np.random.Generator,
               x: int, y0: int, band_h: int) -> int:
    # One glyph-like mark; returns its width. Strokes stay 3 px thick so
    # no 5x5 window saturates (max ink 19 of 25) and the mark reads as
    # text downstream, while every smearing block they cross can fill.
    lo = min(band_h, max(6, int(band_h * 0.6)))
    h = int(rng.integers(lo, band_h + 1))
    top = y0 + int(rng.integers(0, band_h - h + 1))
    if h < 6 or rng.random() < 0.5:
        w = 3
        mask[top : top + h, x : x + w] = 1
    else:
        w = int(rng.integers(8, 13))
        mask[top : top + 2, x : x + w] = 1
        mask[top + h - 2 : top + h, x : x + w] = 1
        mask[top : top + h, x : x + 3] = 1
        mask[top : top + h, x + w - 3 : x + w] = 1
    return w


def _shear(mask: np.ndarray, shift: np.ndarray) -> np.ndarray:
    out = np.zeros_like(mask)
    h = mask.shape[0]
    for x in range(mask.shape[1]):
        s = int(shift[x])
        if s >= 0:
            out[s:, x] = mask[: h - s, x]
        else:
            out[: h + s, x] = mask[-s:, x]
    return out


def generate_page(spec: SynthSpec) -> tuple[np.ndarray, list[LineBox]]:
    """Build one page; returns (grayscale image, ground-truth line boxes).

    Ground-truth boxes are the tight bounding boxes of each line's ink
    after shearing, so they stay exact under skew.
    """
    rng = np.random.default_rng(spec.seed)
    h, w = spec.page_height, spec.page_width
    n_lines = int(rng.integers(spec.line_count_min, spec.line_count_max + 1))

    # Reserve the right margin for the doodle so it never fuses with text.
    text_right = w - _TEXT_MARGIN - (2 * spec.doodle_radius + 20 if spec.doodle_radius else 0)
    # Inter-mark gaps stay in [3, 12]: below 3 the median filter would fuse
    # marks, above 12 the smearing blocks could fail to bridge a line.
    gap_cap = max(4, min(12, int(round(3.0 * (1.0 / spec.ink_fill - 1.0)))))

    line_masks = []
    y = _TEXT_MARGIN
    for _ in range(n_lines):
        band_h = int(rng.integers(spec.line_height_min, spec.line_height_max + 1))
        if y + band_h > h - _TEXT_MARGIN:
            break
        mask = np.zeros((h, w), dtype=np.uint8)
        x = _TEXT_MARGIN
        while x < text_right - 12:
            x += _draw_mark(mask, rng, x, y, band_h)
            x += int(rng.integers(3, gap_cap + 1))
        line_masks.append(mask)
        y += band_h + int(rng.integers(spec.gap_min, spec.gap_max + 1))

    if spec.skew_degrees:
        shift = np.round(math.tan(math.radians(spec.skew_degrees))
                         * np.arange(w)).astype(np.int64)
        line_masks = [_shear(m, shift) for m in line_masks]

    ink = np.zeros((h, w), dtype=np.uint8)
    boxes = []
    for mask in line_masks:
        if not mask.any():
            continue
        ink |= mask
        rows = np.flatnonzero(mask.any(axis=1))
        cols = np.flatnonzero(mask.any(axis=0))
        boxes.append(LineBox(int(cols[0]), int(rows[0]),
                             int(cols[-1] - cols[0] + 1), int(rows[-1] - rows[0] + 1)))

    if spec.doodle_radius:
        r = spec.doodle_radius
        cx = w - _TEXT_MARGIN - r
        cy = int(rng.integers(r + _TEXT_MARGIN, h - r - _TEXT_MARGIN + 1))
        yy, xx = np.ogrid[:h, :w]
        ink |= ((yy - cy) ** 2 + (xx - cx) ** 2 <= r * r).astype(np.uint8)

    if spec.strike_length and boxes:
        target = boxes[int(rng.integers(0, len(boxes)))]
        sy = target.y + target.height // 2
        sx = max(0, min(target.x + (target.width - spec.strike_length) // 2, w - spec.strike_length))
        ink[sy : sy + 2, sx : sx + spec.strike_length] = 1  # 2 px so the median filter keeps it

    page = np.where(ink == 1, 0, 255).astype(np.uint8)
    boxes.sort(key=lambda b: (b.y, b.x))
    return page, boxes
