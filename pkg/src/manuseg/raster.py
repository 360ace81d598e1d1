"""Raster image helpers: netpbm I/O, validation, quarter-turn rotation.

Images are plain 2-D numpy arrays: grayscale pages are uint8 intensities in
[0, 255]; binary images are uint8 with 1 = ink (black) and 0 = background
(white). Only netpbm formats are supported (PGM P2/P5 in, PGM P5 and PPM P6
out) so files stay bit-exact and dependency-free.
"""

from __future__ import annotations

import numpy as np


class PgmError(ValueError):
    """Raised for malformed or unsupported netpbm files."""


def check_gray_image(img) -> np.ndarray:
    """Validate and return a grayscale page as a 2-D uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("grayscale image must be a non-empty 2-D array")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("grayscale image must have integer dtype")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("grayscale intensities must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def check_binary_image(img) -> np.ndarray:
    """Validate and return a binary ink image as a 2-D uint8 {0,1} array."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("binary image must be a non-empty 2-D array")
    if not np.issubdtype(arr.dtype, np.integer) and arr.dtype != bool:
        raise ValueError("binary image must have integer or bool dtype")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("binary image values must be 0 or 1")
    return arr.astype(np.uint8)


def _read_tokens(data: bytes, count: int, pos: int) -> tuple[list[bytes], int]:
    # Netpbm headers: whitespace-separated tokens, '#' starts a comment
    # running to end of line.
    tokens: list[bytes] = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise PgmError("truncated header")
        if data[pos : pos + 1] == b"#":
            while pos < n and data[pos] not in (0x0A, 0x0D):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def load_gray(path) -> np.ndarray:
    """Read a PGM (P2 ascii or P5 binary) file as a grayscale image.

    Maxval must be exactly representable in 8 bits; anything above 255 is
    rejected rather than rescaled so binarization thresholds stay unambiguous.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    (magic,), pos = _read_tokens(data, 1, 0)
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"unsupported netpbm magic {magic!r}; expected P2 or P5")
    (w_tok, h_tok, max_tok), pos = _read_tokens(data, 3, pos)
    try:
        width, height, maxval = int(w_tok), int(h_tok), int(max_tok)
    except ValueError as exc:
        raise PgmError("non-numeric header field") from exc
    if width <= 0 or height <= 0:
        raise PgmError("image dimensions must be positive")
    if maxval <= 0 or maxval > 255:
        raise PgmError(f"maxval {maxval} unsupported; must be in [1, 255]")

    if magic == b"P5":
        pos += 1  # single whitespace byte after maxval
        payload = data[pos : pos + width * height]
        if len(payload) != width * height:
            raise PgmError("truncated P5 payload")
        arr = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    else:
        values = data[pos:].split()
        if len(values) < width * height:
            raise PgmError("truncated P2 payload")
        try:
            arr = np.array([int(v) for v in values[: width * height]], dtype=np.int64)
        except ValueError as exc:
            raise PgmError("non-numeric P2 sample") from exc
        if arr.min() < 0 or arr.max() > maxval:
            raise PgmError("P2 sample out of range")
        arr = arr.astype(np.uint8).reshape(height, width)
    if arr.max(initial=0) > maxval:
        raise PgmError("sample exceeds maxval")
    return arr.copy()


def save_gray(img, path) -> None:
    """Write a grayscale image as binary PGM (P5, maxval 255)."""
    arr = check_gray_image(img)
    h, w = arr.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(arr.tobytes())


def save_binary(img, path) -> None:
    """Write a binary image as PGM P5: ink pixels are byte 0 (black),
    background byte 255. Loading the file back and thresholding at 128
    reproduces the input exactly."""
    arr = check_binary_image(img)
    gray = np.where(arr == 1, 0, 255).astype(np.uint8)
    save_gray(gray, path)


def load_binary(path) -> np.ndarray:
    """Read a PGM file back into a binary image (intensity < 128 is ink)."""
    return (load_gray(path) < 128).astype(np.uint8)


def save_rgb(rgb, path) -> None:
    """Write an (H, W, 3) uint8 array as binary PPM (P6, maxval 255)."""
    arr = np.asarray(rgb, dtype=np.uint8)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) array")
    h, w, _ = arr.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(arr.tobytes())


def rotate_quarter(img, turns: int) -> np.ndarray:
    """Rotate an image by quarter turns clockwise (turns in {0, 1, 2, 3}).

    One turn maps output(x, y) = input(y, H-1-x); four turns compose to the
    identity. Supports the manual-rotation workflow for pages written at
    roughly 90 degrees.
    """
    if turns not in (0, 1, 2, 3):
        raise ValueError(f"turns must be in {{0, 1, 2, 3}}, got {turns!r}")
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("image must be a non-empty 2-D array")
    return np.ascontiguousarray(np.rot90(arr, k=-turns))
