"""MSE and PSNR between a cover and its stego image."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

__all__ = ["PEAK", "QualityReport", "mse", "psnr", "psnr_from_mse", "quality_report", "format_float"]

PEAK = 255


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float  # math.inf when the images are identical
    width: int
    height: int

    def line(self) -> str:
        return f"mse={format_float(self.mse)} psnr={format_float(self.psnr_db)}"


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2:
        raise DimensionError(f"images must share a 2-D shape, got {a.shape} and {b.shape}")
    return a, b


def mse(a, b) -> float:
    """Mean squared pixel difference; the sum is exact before the one division."""
    a, b = _pair(a, b)
    diff = a.astype(np.int64) - b.astype(np.int64)
    total = int(np.sum(diff * diff, dtype=np.int64))
    return total / diff.size


def psnr_from_mse(value: float) -> float:
    if value < 0:
        raise ValueError(f"mse must be non-negative, got {value}")
    if value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / value)


def psnr(a, b) -> float:
    """10 log10(255^2 / MSE) in dB, or ``math.inf`` for identical images."""
    return psnr_from_mse(mse(a, b))


def quality_report(cover, stego) -> QualityReport:
    cover, stego = _pair(cover, stego)
    m = mse(cover, stego)
    return QualityReport(m, psnr_from_mse(m), width=cover.shape[1], height=cover.shape[0])


def format_float(value: float) -> str:
    """Render a metric for ``key=value`` output; infinity prints as ``inf``."""
    if math.isinf(value):
        return "inf"
    return f"{value:.10g}"
