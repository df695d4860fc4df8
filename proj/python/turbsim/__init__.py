"""Turbulence degradation simulator, metrics and dataset generation."""

from ._core import (
    DatasetConfig,
    DegradationParams,
    GenerationResult,
    Manifest,
    ManifestRow,
    MetricItem,
    MetricReport,
    Order,
    PSNR_MAX,
    accumulate_field,
    degradation_field,
    degrade,
    derive_seed,
    evaluate,
    gaussian_blur,
    gaussian_kernel,
    generate_dataset,
    load_png,
    params_for_index,
    psnr,
    read_manifest,
    read_report,
    save_png,
    ssim,
    visualize_field,
    warp,
)

__all__ = [
    "DatasetConfig",
    "DegradationParams",
    "GenerationResult",
    "Manifest",
    "ManifestRow",
    "MetricItem",
    "MetricReport",
    "Order",
    "PSNR_MAX",
    "accumulate_field",
    "degradation_field",
    "degrade",
    "derive_seed",
    "evaluate",
    "gaussian_blur",
    "gaussian_kernel",
    "generate_dataset",
    "load_png",
    "params_for_index",
    "psnr",
    "read_manifest",
    "read_report",
    "save_png",
    "ssim",
    "visualize_field",
    "warp",
]
