"""Accuracy and complexity measurements over the pattern families.

Errors are exact rationals: the deviation of an integer-row pattern from
the line ``s + t*x/(w-1)`` always has denominator ``w - 1``, so sweeps
reduce to integer arithmetic.  Complexity sweeps are analytic (no transform
is executed), which keeps large sizes cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dyadic import Pattern, all_pattern_rows, gdt_opcount
from .reference import ref_all_rows
from .superpixel import (
    SuperpixelSpec,
    sp_opcount,
    sp_pattern_rows,
    spec_from_lambda,
    superpixel_size,
)


@dataclass(frozen=True)
class ErrorReport:
    """Per-slope maximum deviations for one algorithm at one size."""

    algorithm: str
    w: int
    h: int
    per_slope: tuple[Fraction, ...]
    global_max: Fraction

    def __post_init__(self) -> None:
        if self.per_slope and max(self.per_slope) != self.global_max:
            raise ValueError("global maximum must equal the per-slope maximum")


@dataclass(frozen=True)
class ComplexityPoint:
    """Addition count at one size, with its normalized value.

    ``normalized`` is additions / (n^2 ln^3 n) for the superpixel transform
    and additions / (n * h * log2 n) for the plain dyadic transform.
    """

    n: int
    lam: float | None
    sp_size: int
    additions: int
    normalized: float


def ortho_error(pattern: Pattern, t: int) -> Fraction:
    """Maximum per-column deviation of a pattern from its continuous line.

    The line runs through the pattern's start row with total rise t over
    the pattern width; the result is an exact rational.
    """
    w = pattern.w
    if w == 1:
        return Fraction(0)
    x = np.arange(w, dtype=np.int64)
    line_num = pattern.start_row * (w - 1) + t * x
    dev = np.abs(line_num - pattern.rows * (w - 1))
    return Fraction(int(dev.max()), w - 1)


def _per_slope_errors(rows: np.ndarray) -> tuple[Fraction, ...]:
    """Max deviation per slope for rows measured against s = 0 lines."""
    w = rows.shape[1]
    if w == 1:
        return (Fraction(0),)
    t = np.arange(rows.shape[0], dtype=np.int64)[:, None]
    x = np.arange(w, dtype=np.int64)[None, :]
    dev = np.abs(t * x - rows * (w - 1)).max(axis=1)
    return tuple(Fraction(int(d), w - 1) for d in dev)


def error_sweep(
    algorithm: str,
    sizes,
    lam: float | None = None,
    spec: SuperpixelSpec | None = None,
) -> list[ErrorReport]:
    """Maximum orthotropic error of an algorithm's patterns per size.

    Sweeps every slope of the n x n grid at intercept 0 (patterns are
    translation equivariant, so other intercepts add nothing).  For
    ``"sp"`` pass either ``lam``, which auto-sizes the superpixel per n,
    or a fixed ``spec``.
    """
    if algorithm == "sp":
        if (lam is None) == (spec is None):
            raise ValueError("sp sweeps need exactly one of lam or spec")
    elif lam is not None or spec is not None:
        raise ValueError(f"{algorithm} sweeps take neither lam nor spec")
    reports = []
    for n in sizes:
        if n < 1:
            raise ValueError("sweep sizes must be positive")
        if n == 1:
            per = (Fraction(0),)
        elif algorithm == "gdt":
            per = _per_slope_errors(all_pattern_rows(n))
        elif algorithm == "ref":
            per = _per_slope_errors(ref_all_rows(n))
        elif algorithm == "sp":
            sp = spec if spec is not None else spec_from_lambda(n, lam)
            t = np.arange(n, dtype=np.int64)
            rows = sp_pattern_rows(n, n, sp, t, np.zeros_like(t))
            per = _per_slope_errors(rows)
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        reports.append(
            ErrorReport(
                algorithm=algorithm, w=n, h=n, per_slope=per, global_max=max(per)
            )
        )
    return reports


def complexity_sweep(lams, sizes) -> list[ComplexityPoint]:
    """Superpixel-transform addition counts over a (lambda, n) grid.

    Superpixels are auto-sized per (n, lambda); counts are analytic, so
    sizes in the thousands stay cheap.  Points are ordered lambda-major.
    """
    points = []
    for lam in lams:
        for n in sizes:
            if n < 2:
                raise ValueError("complexity sweeps need sizes >= 2")
            size = superpixel_size(n, lam).size
            spec = SuperpixelSpec(size, size, (size - 1) // 2)
            adds = sp_opcount(n, n, spec).additions
            norm = adds / (n * n * math.log(n) ** 3)
            points.append(
                ComplexityPoint(
                    n=n, lam=lam, sp_size=size, additions=adds, normalized=norm
                )
            )
    return points


def dyadic_complexity_points(sizes) -> list[ComplexityPoint]:
    """Plain dyadic-transform counts on square images, log2-normalized."""
    points = []
    for n in sizes:
        if n < 2:
            raise ValueError("complexity sweeps need sizes >= 2")
        adds = gdt_opcount(n, n).additions
        norm = adds / (n * n * math.log2(n))
        points.append(
            ComplexityPoint(n=n, lam=None, sp_size=1, additions=adds, normalized=norm)
        )
    return points


def size_curve(lams, sizes) -> list[tuple[int, float, int]]:
    """Superpixel side per (n, lambda), as (n, lambda, side) rows.

    Rows are ordered lambda-major; the side is non-decreasing in n and
    non-increasing in lambda.
    """
    rows = []
    for lam in lams:
        for n in sizes:
            rows.append((n, lam, superpixel_size(n, lam).size))
    return rows
