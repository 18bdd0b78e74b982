import numpy as np
import pytest
from sklearn.base import clone
from sklearn.model_selection import GridSearchCV
from sklearn.pipeline import make_pipeline

from utmf import MeanFilter, MedianFilter, NoiseInjector, TrimmedMedianFilter
from utmf.filters import FilterParams, denoise_pa, mean_filter, smf
from utmf.noise import NoiseSpec


@pytest.fixture
def batch(rng):
    clean = rng.integers(30, 220, (6, 24, 24), dtype=np.uint8)
    noisy = np.stack([NoiseSpec("sp", 0.5, i).apply(c) for i, c in enumerate(clean)])
    return clean, noisy


def test_params_round_trip():
    est = TrimmedMedianFilter(threshold=30, median_threshold=15)
    assert est.get_params() == {"threshold": 30, "median_threshold": 15}
    assert clone(est).set_params(threshold=25).threshold == 25


def test_transform_single_and_batch(batch):
    _, noisy = batch
    est = TrimmedMedianFilter(30, 15)
    assert np.array_equal(est.fit_transform(noisy[0]), denoise_pa(noisy[0], FilterParams(30, 15)))
    out = est.transform(noisy)
    assert out.shape == noisy.shape
    assert np.array_equal(out[3], denoise_pa(noisy[3], FilterParams(30, 15)))


def test_transform_without_fit(batch):
    _, noisy = batch
    assert np.array_equal(MedianFilter(5).transform(noisy[0]), smf(noisy[0], 5))
    assert np.array_equal(MeanFilter().transform(noisy[0]), mean_filter(noisy[0]))


def test_validation_rejects_bad_input():
    with pytest.raises(ValueError):
        TrimmedMedianFilter().transform(np.full((4, 4), 300))
    with pytest.raises(ValueError):
        TrimmedMedianFilter().transform(np.zeros(5))


def test_score_is_psnr(batch):
    clean, noisy = batch
    assert TrimmedMedianFilter().score(noisy, clean) > MedianFilter().score(noisy, clean)


def test_noise_injector_pipeline(batch):
    clean, _ = batch
    pipe = make_pipeline(NoiseInjector("sp", 0.3, seed=4), TrimmedMedianFilter())
    out = pipe.fit_transform(clean)
    expected = denoise_pa(NoiseSpec("sp", 0.3, 5).apply(clean[1]))
    assert np.array_equal(out[1], expected)


def test_grid_search_over_thresholds(batch):
    clean, noisy = batch
    search = GridSearchCV(
        TrimmedMedianFilter(), {"threshold": [20, 40], "median_threshold": [15, 30]}, cv=2
    )
    search.fit(noisy, clean)
    assert set(search.best_params_) == {"threshold", "median_threshold"}
