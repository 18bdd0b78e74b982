"""Unsymmetrical trimmed median detection and correction, plus baselines.

Sorted windows use one-based positions in the docstrings below (position 1
holds the minimum, position 9 the maximum); the code indexes from zero.
"""

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import check_image, check_window_size
from .image import window_stack
from .sorting import apply_network, snake_sort_network

WINDOW_LEN = 9


@dataclass(frozen=True)
class FilterParams:
    """Detection thresholds: ``t`` gates the centre pixel, ``t1`` the median."""

    t: int = 40
    t1: int = 20

    def __post_init__(self):
        for name in ("t", "t1"):
            value = getattr(self, name)
            if not 0 <= value <= 255:
                raise ValueError(f"threshold {name} must lie in [0, 255], got {value}")


class Decision(enum.IntEnum):
    UNALTERED = 0
    MEDIAN_REPLACE = 1
    UTMED_REPLACE = 2


@dataclass(frozen=True)
class TrimBounds:
    """Forward counter ``f`` and reverse counter ``l``, both one-based.

    Sorted positions ``f..l`` hold the values that are neither 0 nor 255;
    the run is empty when ``f > l``.
    """

    f: int
    l: int

    @property
    def length(self):
        return max(0, self.l - self.f + 1)


def trim_bounds(s):
    zeros = sum(1 for v in s if v == 0)
    saturated = sum(1 for v in s if v == 255)
    return TrimBounds(1 + zeros, WINDOW_LEN - saturated)


# Average of a window made only of 0s and 255s, indexed by its count of zeros.
IMPULSE_LUT = tuple((255 * (WINDOW_LEN - k)) // WINDOW_LEN for k in range(WINDOW_LEN + 1))


def impulse_lut(zero_count, count255=None):
    """Replacement value for a window holding only 0s and 255s."""
    if count255 is None:
        count255 = WINDOW_LEN - zero_count
    if not 0 <= zero_count <= WINDOW_LEN or zero_count + count255 != WINDOW_LEN:
        raise ValueError(
            f"impulse LUT needs an all-extreme window; got {zero_count} zeros "
            f"and {count255} saturated values"
        )
    return IMPULSE_LUT[zero_count]


def utmed(s, tb=None):
    """Median of the sorted window with every 0 and 255 removed.

    An even-length run yields the floor of the mean of its two central
    values. An empty run falls back to :func:`impulse_lut`.
    """
    if tb is None:
        tb = trim_bounds(s)
    n = tb.length
    if n == 0:
        return impulse_lut(tb.f - 1, WINDOW_LEN - tb.l)
    lo = tb.f - 1  # zero-based start of the run
    if n % 2:
        return int(s[lo + (n - 1) // 2])
    return (int(s[lo + n // 2 - 1]) + int(s[lo + n // 2])) // 2


def classify_and_correct(center, s_med, ut, params=FilterParams()):
    if abs(int(center) - int(ut)) <= params.t:
        return int(center), Decision.UNALTERED
    if abs(int(s_med) - int(ut)) > params.t1:
        return int(ut), Decision.UTMED_REPLACE
    return int(s_med), Decision.MEDIAN_REPLACE


def filter_window(window, params=FilterParams()):
    """Apply the detector to one 3x3 window; returns ``(value, Decision)``."""
    values = getattr(window, "values", window)
    s = snake_sort_network(values)
    return classify_and_correct(values[4], s[4], utmed(s), params)


def _utmed_planes(s):
    """Vectorised :func:`utmed` over a sorted stack of shape (9, H, W)."""
    zeros = np.count_nonzero(s == 0, axis=0)
    sat = np.count_nonzero(s == 255, axis=0)
    n = WINDOW_LEN - zeros - sat
    lower = np.clip(zeros + (n - 1) // 2, 0, 8)
    upper = np.clip(zeros + n // 2, 0, 8)
    a = np.take_along_axis(s, lower[None], axis=0)[0].astype(np.int32)
    b = np.take_along_axis(s, upper[None], axis=0)[0].astype(np.int32)
    lut = np.asarray(IMPULSE_LUT, dtype=np.int32)[zeros]
    # odd n: lower == upper; even n: lower and upper straddle the middle
    return np.where(n == 0, lut, (a + b) // 2)


def denoise_pa(img, params=FilterParams(), return_decisions=False):
    """Switched trimmed-median filter over a whole image.

    Every window is taken from the replicate-padded input, never from
    already-restored pixels.
    """
    img = check_image(img)
    w = window_stack(img, 3)
    s = apply_network(w)
    center = w[4].astype(np.int32)
    s_med = s[4].astype(np.int32)
    ut = _utmed_planes(s)
    noisy = np.abs(center - ut) > params.t
    median_noisy = np.abs(s_med - ut) > params.t1
    out = np.where(noisy, np.where(median_noisy, ut, s_med), center).astype(np.uint8)
    if not return_decisions:
        return out
    decisions = np.where(
        noisy,
        np.where(median_noisy, Decision.UTMED_REPLACE, Decision.MEDIAN_REPLACE),
        Decision.UNALTERED,
    ).astype(np.uint8)
    return out, decisions


def smf(img, size=3):
    """Standard median filter over a replicate-padded ``size`` x ``size`` window."""
    size = check_window_size(size, allowed={3, 5})
    w = window_stack(img, size)
    return np.sort(w, axis=0)[size * size // 2]


def mean_filter(img, size=3):
    """Floor of the neighbourhood average over a replicate-padded window."""
    size = check_window_size(size)
    w = window_stack(img, size)
    return (w.sum(axis=0, dtype=np.int32) // (size * size)).astype(np.uint8)
