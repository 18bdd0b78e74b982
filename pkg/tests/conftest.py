from pathlib import Path

import numpy as np
import pytest

from utmf.image import load_pgm

DATA = Path(__file__).parent / "data"
LENA = DATA / "lena.pgm"

# 5x5 segments from the worked examples; the processed pixel is marked.
CASE_A = np.array(
    [
        [0, 0, 255, 0, 255],
        [94, 177, 205, 155, 255],
        [0, 0, 255, 25, 123],  # (2, 2) = 255
        [0, 0, 187, 124, 255],
        [0, 255, 255, 255, 255],
    ],
    dtype=np.uint8,
)
CASE_B = np.array(
    [
        [0, 0, 255, 0, 255],
        [94, 177, 0, 0, 125],
        [0, 0, 185, 0, 255],  # (2, 3) = 0
        [0, 0, 255, 255, 255],
        [0, 255, 255, 255, 255],
    ],
    dtype=np.uint8,
)
CASE_3 = np.array(
    [
        [0, 0, 255, 0, 255],
        [104, 119, 255, 255, 255],  # (1, 1) = 119
        [0, 103, 255, 255, 123],
        [0, 122, 255, 124, 255],
        [0, 255, 255, 255, 255],
    ],
    dtype=np.uint8,
)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def lena():
    if not LENA.exists():
        pytest.skip("tests/data/lena.pgm missing; run scripts/fetch_lena.py")
    return load_pgm(LENA)


@pytest.fixture(scope="session")
def natural_image():
    """Lena when available, otherwise scikit-image's cameraman."""
    if LENA.exists():
        return load_pgm(LENA)
    skimage_data = pytest.importorskip("skimage.data")
    return skimage_data.camera()


ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call with (passed, detail)."""

    def record(passed, detail):
        ACCEPTANCE_RESULTS[request.node.name] = (bool(passed), detail)
        assert passed, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (passed, detail) in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
