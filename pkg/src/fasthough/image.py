"""Pixel-grid containers, portable graymap I/O, and test-image generation.

Coordinate convention used throughout the package: pixel (x, y) has x
increasing rightward and y increasing upward, with the origin at the center
of the bottom-left pixel.  Arrays are stored row-major as ``values[y, x]``,
so row 0 is the bottom image row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

GRAYMAP_MAX = 65535
ACCUMULATOR_MAX = 2**64 - 1


class GraymapError(ValueError):
    """A portable graymap file could not be parsed."""


class CapacityError(ValueError):
    """An operation would overflow the accumulators or the pixel budget."""


@dataclass(frozen=True, eq=False)
class GrayImage:
    """A w x h grid of non-negative integer pixel values.

    Parameters
    ----------
    values : np.ndarray
        2D integer array of shape ``(h, w)``; ``values[y, x]`` is the pixel
        at column x and row y, row 0 at the bottom.
    max_value : int
        Declared upper bound on pixel values.  Transforms use it for
        accumulator capacity checks.
    """

    values: np.ndarray
    max_value: int = GRAYMAP_MAX

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.int64)
        if v.ndim != 2 or v.size == 0:
            raise ValueError("image values must form a non-empty 2D grid")
        if int(v.min()) < 0:
            raise ValueError("pixel values must be non-negative")
        if int(v.max()) > self.max_value:
            raise ValueError(
                f"pixel value {int(v.max())} exceeds declared maximum {self.max_value}"
            )
        object.__setattr__(self, "values", v)

    @property
    def w(self) -> int:
        return self.values.shape[1]

    @property
    def h(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class HoughImage:
    """Accumulator grid indexed by line parameters.

    ``values[s, t]`` holds the sum of input pixels along the discrete line
    with total rise t and left intercept s.  Shape matches the input image
    the transform ran on.  ``algorithm`` names the producing transform.
    """

    values: np.ndarray
    algorithm: str

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.uint64)
        if v.ndim != 2 or v.size == 0:
            raise ValueError("hough values must form a non-empty 2D grid")
        object.__setattr__(self, "values", v)

    @property
    def w(self) -> int:
        return self.values.shape[1]

    @property
    def h(self) -> int:
        return self.values.shape[0]


def _header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c in (b" ", b"\t", b"\r", b"\n"):
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\r", b"\n"):
                pos += 1
        else:
            break
    if pos >= n:
        raise GraymapError(f"unexpected end of header at byte {pos}")
    start = pos
    while pos < n and data[pos : pos + 1] not in (b" ", b"\t", b"\r", b"\n"):
        pos += 1
    return data[start:pos], pos


def load_graymap(path: str | Path) -> GrayImage:
    """Read a binary (P5) or ASCII (P2) portable graymap.

    The file's top scanline becomes row ``h - 1``, so ``values[0, 0]`` is the
    bottom-left pixel.  Raises :class:`GraymapError` with the offending byte
    offset on malformed input.
    """
    data = Path(path).read_bytes()
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise GraymapError(f"unsupported magic {magic!r} at byte 0")
    pos = 2
    header = []
    for name in ("width", "height", "maxval"):
        tok, pos = _header_token(data, pos)
        try:
            val = int(tok)
        except ValueError:
            raise GraymapError(
                f"malformed {name} {tok!r} at byte {pos - len(tok)}"
            ) from None
        header.append(val)
    w, h, maxval = header
    if w < 1 or h < 1:
        raise GraymapError(f"non-positive image dimensions at byte {pos}")
    if not 1 <= maxval <= GRAYMAP_MAX:
        raise GraymapError(f"maxval {maxval} out of range at byte {pos}")

    if magic == b"P5":
        pos += 1  # single whitespace byte terminates the header
        itemsize = 1 if maxval < 256 else 2
        need = w * h * itemsize
        payload = data[pos : pos + need]
        if len(payload) < need:
            raise GraymapError(
                f"truncated payload at byte {pos + len(payload)}:"
                f" expected {need} bytes"
            )
        dtype = np.dtype(">u2") if itemsize == 2 else np.dtype("u1")
        flat = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    else:
        flat = np.empty(w * h, dtype=np.int64)
        for i in range(w * h):
            try:
                tok, pos = _header_token(data, pos)
            except GraymapError:
                raise GraymapError(
                    f"truncated payload at byte {len(data)}:"
                    f" expected {w * h} samples, got {i}"
                ) from None
            try:
                flat[i] = int(tok)
            except ValueError:
                raise GraymapError(
                    f"malformed sample {tok!r} at byte {pos - len(tok)}"
                ) from None
    if int(flat.max()) > maxval:
        raise GraymapError(
            f"sample value {int(flat.max())} exceeds maxval {maxval}"
        )
    values = flat.reshape(h, w)[::-1]
    return GrayImage(values.copy(), max_value=maxval)


def save_graymap(img: GrayImage, path: str | Path) -> None:
    """Write a binary (P5) graymap; round-trips bit-exactly through load.

    Refuses images whose values exceed the 16-bit graymap range.
    """
    vmax = int(img.values.max())
    if vmax > GRAYMAP_MAX:
        raise ValueError(f"pixel value {vmax} exceeds graymap range {GRAYMAP_MAX}")
    maxval = max(1, vmax)
    toprows = img.values[::-1]
    if maxval < 256:
        payload = toprows.astype("u1").tobytes()
    else:
        payload = toprows.astype(">u2").tobytes()
    header = b"P5\n%d %d\n%d\n" % (img.w, img.h, maxval)
    Path(path).write_bytes(header + payload)


def random_image(w: int, h: int, max_value: int, seed: int) -> GrayImage:
    """Uniform random image on [0, max_value], deterministic per seed."""
    if w < 1 or h < 1:
        raise ValueError("image dimensions must be positive")
    if max_value < 0:
        raise ValueError("max_value must be non-negative")
    rng = np.random.default_rng(seed)
    values = rng.integers(0, max_value + 1, size=(h, w), dtype=np.int64)
    return GrayImage(values, max_value=max_value)


# Ten-ellipse head phantom: intensity, x half-axis, y half-axis, x center,
# y center, rotation in degrees (counter-clockwise), in [-1, 1] coordinates.
SHEPP_LOGAN_ELLIPSES: tuple[tuple[float, float, float, float, float, float], ...] = (
    (2.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0),
    (-0.98, 0.6624, 0.8740, 0.00, -0.0184, 0.0),
    (-0.02, 0.1100, 0.3100, 0.22, 0.0000, -18.0),
    (-0.02, 0.1600, 0.4100, -0.22, 0.0000, 18.0),
    (0.01, 0.2100, 0.2500, 0.00, 0.3500, 0.0),
    (0.01, 0.0460, 0.0460, 0.00, 0.1000, 0.0),
    (0.01, 0.0460, 0.0460, 0.00, -0.1000, 0.0),
    (0.01, 0.0460, 0.0230, -0.08, -0.6050, 0.0),
    (0.01, 0.0230, 0.0230, 0.00, -0.6050, 0.0),
    (0.01, 0.0230, 0.0460, 0.06, -0.6050, 0.0),
)

# Largest possible ellipse-intensity sum (the outer rim carries 2.0 alone);
# fixes the [0, 255] scaling independently of image size.
_PHANTOM_PEAK = 2.0


def _rasterize_ellipses(n: int, ellipses) -> np.ndarray:
    """Summed ellipse intensities sampled at pixel centers, shape (n, n)."""
    coords = np.zeros(1) if n == 1 else np.linspace(-1.0, 1.0, n)
    x = coords[None, :]
    y = coords[:, None]
    total = np.zeros((n, n))
    for level, ax, ay, x0, y0, deg in ellipses:
        phi = math.radians(deg)
        xr = (x - x0) * math.cos(phi) + (y - y0) * math.sin(phi)
        yr = (y - y0) * math.cos(phi) - (x - x0) * math.sin(phi)
        total += np.where((xr / ax) ** 2 + (yr / ay) ** 2 <= 1.0, level, 0.0)
    return total


def shepp_logan(n: int) -> GrayImage:
    """The standard ten-ellipse head phantom as an n x n integer image.

    Pixels are included by their center coordinate; summed intensities are
    scaled to [0, 255] and rounded half up.  Pure function of n.
    """
    if n < 1:
        raise ValueError("phantom size must be positive")
    total = _rasterize_ellipses(n, SHEPP_LOGAN_ELLIPSES)
    scaled = np.floor(total * (255.0 / _PHANTOM_PEAK) + 0.5).astype(np.int64)
    np.clip(scaled, 0, 255, out=scaled)
    return GrayImage(scaled, max_value=255)
