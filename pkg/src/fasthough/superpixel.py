"""Superpixel-expanded Hough transform with controllable accuracy.

Each input pixel is replaced by a block with a single value-carrying column;
the dyadic transform runs on the expanded image and the original parameter
grid is recovered by rounding line endpoints.  Sizing the block by
:func:`superpixel_size` keeps the line-approximation error below
``lambda + 1/2`` regardless of image size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import lambertw

from .dyadic import OpCount, Pattern, gdt_opcount, gdt_transform, pattern_rows
from .image import CapacityError, GrayImage, HoughImage

DEFAULT_PIXEL_BUDGET = 2**31


@dataclass(frozen=True)
class SuperpixelSpec:
    """Block shape and the index of its value-carrying column."""

    sp_width: int
    sp_height: int
    column: int

    def __post_init__(self) -> None:
        if self.sp_width < 1 or self.sp_height < 1:
            raise ValueError("superpixel dimensions must be positive")
        if not 0 <= self.column < self.sp_width:
            raise ValueError(
                f"column {self.column} out of range for width {self.sp_width}"
            )

    @property
    def centered(self) -> bool:
        """True for odd dimensions with the value column in the middle."""
        return (
            self.sp_width % 2 == 1
            and self.sp_height % 2 == 1
            and self.column == (self.sp_width - 1) // 2
        )


@dataclass(frozen=True)
class RemappedParams:
    """Line parameters carried over to the expanded image.

    ``y_left`` and ``y_right`` are the exact endpoint ordinates of the
    mapped line; ``t_hat`` and ``s_hat`` are their rounded st-parameters on
    the expanded grid.  ``s_unwrapped`` keeps the rounded left ordinate
    before the modulo, for pattern extraction.
    """

    y_left: Fraction
    y_right: Fraction
    t_hat: int
    s_hat: int
    s_unwrapped: int


@dataclass(frozen=True)
class SizingResult:
    """Chosen superpixel side for a target accuracy, with diagnostics."""

    lam: float
    size: int
    condition_lhs: float
    condition_rhs: float
    real_root: float


def expand(
    img: GrayImage,
    spec: SuperpixelSpec,
    pixel_budget: int = DEFAULT_PIXEL_BUDGET,
) -> GrayImage:
    """Replace every pixel by its superpixel block.

    Output shape is ``(w*sp_width) x (h*sp_height)``; column ``column`` of
    each block repeats the pixel value over the block height, all other
    entries are zero.  Refuses expansions above ``pixel_budget`` pixels.
    """
    big_w = img.w * spec.sp_width
    big_h = img.h * spec.sp_height
    if big_w * big_h > pixel_budget:
        raise CapacityError(
            f"expanded image {big_w}x{big_h} exceeds pixel budget {pixel_budget}"
        )
    out = np.zeros((big_h, big_w), dtype=np.int64)
    out[:, spec.column :: spec.sp_width] = np.repeat(
        img.values, spec.sp_height, axis=0
    )
    return GrayImage(out, max_value=img.max_value)


def remap_params(
    w: int, h: int, spec: SuperpixelSpec, t: int, s: int
) -> RemappedParams:
    """Map the line (t, s) of a w x h image onto the expanded grid.

    Endpoint ordinates are evaluated in exact rational arithmetic so the
    half-up rounding rule is deterministic; floats can flip ties.
    """
    if w < 2:
        raise ValueError("remapping is defined for image width >= 2")
    sw, sh = spec.sp_width, spec.sp_height
    slope = Fraction(sh, sw) * Fraction(t, w - 1)
    offset = sh * (s + Fraction(1, 2)) - Fraction(1, 2)
    y_left = slope * (Fraction(1, 2) - Fraction(sw, 2)) + offset
    y_right = slope * (w * sw - Fraction(sw, 2) - Fraction(1, 2)) + offset
    r_left = math.floor(y_left + Fraction(1, 2))
    r_right = math.floor(y_right + Fraction(1, 2))
    t_hat = (r_right - r_left) % (w * sw)
    s_hat = r_left % (h * sh)
    return RemappedParams(y_left, y_right, t_hat, s_hat, r_left)


def _remap_grid(w: int, h: int, spec: SuperpixelSpec, ts, ss):
    """(t_hat, s_unwrapped) for parameter arrays, in pure integer arithmetic.

    Same half-up rounding as :func:`remap_params`, via doubled numerators.
    Broadcasts ``ts`` against ``ss``.
    """
    sw, sh = spec.sp_width, spec.sp_height
    ts = np.asarray(ts, dtype=np.int64)
    ss = np.asarray(ss, dtype=np.int64)
    den = 2 * sw * (w - 1)
    base = sw * (w - 1) * sh * (2 * ss + 1)
    r_left = (sh * ts * (1 - sw) + base) // den
    r_right = (sh * ts * (2 * w * sw - sw - 1) + base) // den
    t_hat = (r_right - r_left) % (w * sw)
    return t_hat, r_left


def sp_transform(
    img: GrayImage,
    spec: SuperpixelSpec,
    pixel_budget: int = DEFAULT_PIXEL_BUDGET,
) -> tuple[HoughImage, OpCount]:
    """Hough transform via superpixel expansion and subsampling.

    Runs the dyadic transform on the expanded image and picks, for every
    (t, s) of the original grid, the expanded entry addressed by
    :func:`remap_params`.  Subsampling itself performs no counted
    arithmetic, so the returned count is that of the expanded transform.
    With a 1 x 1 superpixel this is bit-identical to
    :func:`fasthough.dyadic.gdt_transform`.
    """
    if img.w == 1:
        return HoughImage(img.values, algorithm="sp"), OpCount(0)
    expanded = expand(img, spec, pixel_budget)
    hough_big, ops = gdt_transform(expanded)
    t_grid = np.arange(img.w, dtype=np.int64)[None, :]
    s_grid = np.arange(img.h, dtype=np.int64)[:, None]
    t_hat, s_unwrapped = _remap_grid(img.w, img.h, spec, t_grid, s_grid)
    s_hat = s_unwrapped % (img.h * spec.sp_height)
    out = hough_big.values[s_hat, t_hat]
    return HoughImage(out, algorithm="sp"), ops


def sp_pattern_rows(w: int, h: int, spec: SuperpixelSpec, ts, ss) -> np.ndarray:
    """Unwrapped pattern rows for each (t, s) pair; shape (len(ts), w).

    Subsamples the expanded-grid pattern at the value-carrying columns and
    floor-divides by the superpixel height.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=np.int64))
    ss = np.atleast_1d(np.asarray(ss, dtype=np.int64))
    t_hat, s_unwrapped = _remap_grid(w, h, spec, ts, ss)
    big_rows = pattern_rows(w * spec.sp_width, t_hat, s_unwrapped)
    cols = np.arange(w, dtype=np.int64) * spec.sp_width + spec.column
    return big_rows[:, cols] // spec.sp_height


def sp_pattern(w: int, h: int, spec: SuperpixelSpec, t: int, s: int) -> Pattern:
    """The discrete line the superpixel transform sums along for (t, s)."""
    if not 0 <= t < w:
        raise ValueError(f"slope parameter {t} out of range for width {w}")
    if not 0 <= s < h:
        raise ValueError(f"intercept {s} out of range for height {h}")
    if w == 1:
        return Pattern(w=1, start_row=s, rows=np.array([s]), wrap_height=h)
    rows = sp_pattern_rows(w, h, spec, [t], [s])[0]
    return Pattern(w=w, start_row=int(rows[0]), rows=rows, wrap_height=h)


def _accuracy_gap(w: int, x: float, lam: float) -> float:
    # Positive iff side x meets the error-vs-size condition for width w.
    return 12.0 * lam * x - 2.0 * math.log2(w * x) - 13.0


def superpixel_size(w: int, lam: float) -> SizingResult:
    """Smallest odd superpixel side keeping the error below lam + 1/2.

    Scans odd candidates for the smallest x with
    ``2*log2(w*x) + 13 < 12*lam*x`` and also bisects the boundary equation
    for its larger real root (accurate to 1e-9), which the chosen size
    exceeds by at most 2.
    """
    if w < 2:
        raise ValueError("sizing is defined for image width >= 2")
    if not 0.0 < lam <= 1.0:
        raise ValueError("lambda must lie in (0, 1]")
    x = 1
    while not _accuracy_gap(w, x, lam) > 0.0:
        x += 2
    lo, hi = float(max(x - 2, 1)), float(x)
    if _accuracy_gap(w, lo, lam) > 0.0:
        # No sign change next to the scan hit; rebracket from above.
        hi = 1.0
        while _accuracy_gap(w, hi, lam) <= 0.0:
            hi *= 2.0
        lo = hi / 2.0
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if _accuracy_gap(w, mid, lam) > 0.0:
            hi = mid
        else:
            lo = mid
    return SizingResult(
        lam=lam,
        size=x,
        condition_lhs=2.0 * math.log2(w * x) + 13.0,
        condition_rhs=12.0 * lam * x,
        real_root=0.5 * (lo + hi),
    )


def lambert_size_root(w: int, lam: float) -> float:
    """Closed-form larger root of the sizing equation, for cross-checking.

    Uses the lower real branch of the Lambert W function; agrees with the
    bisection root of :func:`superpixel_size`.
    """
    ln2 = math.log(2.0)
    arg = -3.0 * lam * ln2 / (32.0 * math.sqrt(2.0) * w)
    return float(-lambertw(arg, -1).real / (6.0 * lam * ln2))


def spec_from_lambda(w: int, lam: float) -> SuperpixelSpec:
    """Square centered superpixel sized by :func:`superpixel_size`."""
    x = superpixel_size(w, lam).size
    return SuperpixelSpec(sp_width=x, sp_height=x, column=(x - 1) // 2)


def sp_opcount(w: int, h: int, spec: SuperpixelSpec) -> OpCount:
    """Additions of the superpixel transform: the expanded-image count."""
    return gdt_opcount(w * spec.sp_width, h * spec.sp_height)
