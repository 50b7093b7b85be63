"""Rounded ideal-line Hough transform: the accuracy baseline.

Patterns follow the continuous line exactly up to per-column rounding, so
the orthotropic deviation never exceeds 1/2.  Summation is direct, hence
the near-cubic addition count w*h*(w-1).
"""

from __future__ import annotations

import numpy as np

from .dyadic import OpCount, Pattern
from .image import ACCUMULATOR_MAX, CapacityError, GrayImage, HoughImage


def ref_all_rows(w: int) -> np.ndarray:
    """rows[t, x] = round_half_up(t*x / (w-1)) at start row 0; shape (w, w)."""
    if w == 1:
        return np.zeros((1, 1), dtype=np.int64)
    t = np.arange(w, dtype=np.int64)[:, None]
    x = np.arange(w, dtype=np.int64)[None, :]
    return (2 * t * x + (w - 1)) // (2 * (w - 1))


def ref_pattern(w: int, t: int, s: int, wrap_height: int | None = None) -> Pattern:
    """Rounded ideal line with rise t over width w, starting at row s.

    ``wrap_height`` sets the cyclic view; by default it is chosen large
    enough that wrapping is a no-op.  Pass the image height when the
    wrapped view matters.
    """
    if not 0 <= t < max(w, 1):
        raise ValueError(f"slope parameter {t} out of range for width {w}")
    if w == 1:
        rows = np.array([s], dtype=np.int64)
    else:
        x = np.arange(w, dtype=np.int64)
        rows = s + (2 * t * x + (w - 1)) // (2 * (w - 1))
    if wrap_height is None:
        wrap_height = int(rows.max()) + 1
    return Pattern(w=w, start_row=s, rows=rows, wrap_height=wrap_height)


def ref_transform(img: GrayImage) -> tuple[HoughImage, OpCount]:
    """Direct summation along rounded ideal lines.

    Entry (t, s) sums the image over the wrapped rows of
    :func:`ref_pattern`; the count is w*h*(w-1) additions exactly.
    """
    if img.max_value * img.w > ACCUMULATOR_MAX:
        raise CapacityError(
            f"accumulating {img.w} values up to {img.max_value} may overflow"
        )
    w, h = img.w, img.h
    values = img.values.astype(np.uint64)
    if w == 1:
        return HoughImage(values.copy(), algorithm="ref"), OpCount(0)
    rows = ref_all_rows(w)
    y = np.arange(h, dtype=np.int64)[:, None]
    cols = np.arange(w, dtype=np.int64)[None, :]
    out = np.empty((h, w), dtype=np.uint64)
    for t in range(w):
        idx = (rows[t][None, :] + y) % h
        out[:, t] = values[idx, cols].sum(axis=1)
    return HoughImage(out, algorithm="ref"), OpCount(w * h * (w - 1))
