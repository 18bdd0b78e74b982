"""Switched median filtering with an unsymmetrical trimmed median detector."""

from .estimators import MeanFilter, MedianFilter, NoiseInjector, TrimmedMedianFilter
from .filters import (
    Decision,
    FilterParams,
    TrimBounds,
    classify_and_correct,
    denoise_pa,
    filter_window,
    impulse_lut,
    mean_filter,
    smf,
    trim_bounds,
    utmed,
)
from .image import Window, load_pgm, pad_replicate, read_pgm, save_pgm, window_at, write_pgm
from .metrics import QualityReport, ief, mse, psnr
from .noise import (
    NoiseSpec,
    add_gaussian,
    add_mixed,
    add_random_impulse,
    add_salt_pepper,
    measure_density,
)
from .sorting import reference_sort, snake_sort_network, sort3, verify_network

__version__ = "0.1.0"
