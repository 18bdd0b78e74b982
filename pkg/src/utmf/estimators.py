"""scikit-learn compatible wrappers.

The filters are stateless, so ``fit`` only validates its input. ``transform``
takes one image (H, W) or a stack (n, H, W). ``score`` is the mean PSNR
against clean targets, which lets ``GridSearchCV`` tune the thresholds.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_image
from .filters import FilterParams, denoise_pa, mean_filter, smf
from .metrics import psnr
from .noise import NoiseSpec


class _ImageTransformer(TransformerMixin, BaseEstimator):
    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = False
        tags.input_tags.two_d_array = False
        return tags

    def fit(self, X, y=None):
        check_image(X, allow_batch=True, name="X")
        return self

    def _apply(self, img, index):
        raise NotImplementedError

    def transform(self, X):
        X = check_image(X, allow_batch=True, name="X")
        if X.ndim == 2:
            return self._apply(X, 0)
        return np.stack([self._apply(img, i) for i, img in enumerate(X)])


class _ImageFilter(_ImageTransformer):
    def score(self, X, y):
        """Mean PSNR (dB) of ``transform(X)`` against the clean images ``y``."""
        restored = self.transform(X)
        y = check_image(y, allow_batch=True, name="y")
        if restored.ndim == 2:
            return psnr(y, restored)
        return float(np.mean([psnr(c, r) for c, r in zip(y, restored)]))


class TrimmedMedianFilter(_ImageFilter):
    """Switched filter using the unsymmetrical trimmed median as detector.

    Parameters
    ----------
    threshold : int, default=40
        A pixel further than this from the trimmed median is treated as noisy.
    median_threshold : int, default=20
        When the window median is further than this from the trimmed median,
        the trimmed median replaces the pixel instead of the median.
    """

    def __init__(self, threshold=40, median_threshold=20):
        self.threshold = threshold
        self.median_threshold = median_threshold

    def _apply(self, img, index):
        params = FilterParams(self.threshold, self.median_threshold)
        return denoise_pa(img, params)


class MedianFilter(_ImageFilter):
    def __init__(self, size=3):
        self.size = size

    def _apply(self, img, index):
        return smf(img, self.size)


class MeanFilter(_ImageFilter):
    def __init__(self, size=3):
        self.size = size

    def _apply(self, img, index):
        return mean_filter(img, self.size)


class NoiseInjector(_ImageTransformer):
    """Corrupt images with one of the ``utmf.noise`` regimes.

    Image ``i`` of a stack is corrupted with seed ``seed + i``.
    """

    def __init__(self, kind="sp", level=0.5, seed=0, var=0.001):
        self.kind = kind
        self.level = level
        self.seed = seed
        self.var = var

    def _apply(self, img, index):
        return NoiseSpec(self.kind, self.level, self.seed + index, self.var).apply(img)
