"""Restoration quality: MSE, PSNR and image enhancement factor."""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_image, check_same_shape

PEAK = 255


def _squared_error_sum(a, b):
    diff = a.astype(np.int64) - b.astype(np.int64)
    return int(np.sum(diff * diff))


def _pair(reference, test):
    reference = check_image(reference, name="reference")
    test = check_image(test, name="test")
    check_same_shape(reference, test, names=["reference", "test"])
    return reference, test


def mse(reference, test):
    reference, test = _pair(reference, test)
    return _squared_error_sum(reference, test) / reference.size


def psnr_from_mse(value):
    if value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / value)


def psnr(reference, test):
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    return psnr_from_mse(mse(reference, test))


def ief(clean, noisy, restored):
    """Sum of squared noise errors over sum of squared residual errors.

    Returns ``nan`` when the restored image equals the clean one.
    """
    clean = check_image(clean, name="clean")
    noisy = check_image(noisy, name="noisy")
    restored = check_image(restored, name="restored")
    check_same_shape(clean, noisy, restored, names=["clean", "noisy", "restored"])
    denom = _squared_error_sum(restored, clean)
    if denom == 0:
        return math.nan
    return _squared_error_sum(noisy, clean) / denom


def format_number(value):
    """Spell a metric the way the CSV outputs do: ``inf``, ``nan`` or ``%.10g``."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.10g}"


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float
    ief: float

    @classmethod
    def evaluate(cls, clean, noisy, restored):
        m = mse(clean, restored)
        return cls(m, psnr_from_mse(m), ief(clean, noisy, restored))

    def to_csv_row(self):
        return ",".join(format_number(v) for v in (self.mse, self.psnr, self.ief))
