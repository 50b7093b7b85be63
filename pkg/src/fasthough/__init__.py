"""Fast Hough / discrete Radon transforms with superpixel-controlled accuracy."""

from .analysis import (
    ComplexityPoint,
    ErrorReport,
    complexity_sweep,
    dyadic_complexity_points,
    error_sweep,
    ortho_error,
    size_curve,
)
from .dyadic import (
    OpCount,
    Pattern,
    all_pattern_rows,
    gdt_opcount,
    gdt_pattern,
    gdt_transform,
    pattern_rows,
)
from .image import (
    CapacityError,
    GrayImage,
    GraymapError,
    HoughImage,
    load_graymap,
    random_image,
    save_graymap,
    shepp_logan,
)
from .reference import ref_pattern, ref_transform
from .superpixel import (
    DEFAULT_PIXEL_BUDGET,
    RemappedParams,
    SizingResult,
    SuperpixelSpec,
    expand,
    lambert_size_root,
    remap_params,
    sp_opcount,
    sp_pattern,
    sp_pattern_rows,
    sp_transform,
    spec_from_lambda,
    superpixel_size,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ComplexityPoint",
    "DEFAULT_PIXEL_BUDGET",
    "ErrorReport",
    "GrayImage",
    "GraymapError",
    "HoughImage",
    "OpCount",
    "Pattern",
    "RemappedParams",
    "SizingResult",
    "SuperpixelSpec",
    "all_pattern_rows",
    "complexity_sweep",
    "dyadic_complexity_points",
    "error_sweep",
    "expand",
    "gdt_opcount",
    "gdt_pattern",
    "gdt_transform",
    "lambert_size_root",
    "load_graymap",
    "ortho_error",
    "pattern_rows",
    "random_image",
    "ref_pattern",
    "ref_transform",
    "remap_params",
    "save_graymap",
    "shepp_logan",
    "size_curve",
    "sp_opcount",
    "sp_pattern",
    "sp_pattern_rows",
    "sp_transform",
    "spec_from_lambda",
    "superpixel_size",
]
