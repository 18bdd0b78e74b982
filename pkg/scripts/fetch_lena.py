"""Fetch the standard 512x512 8-bit Lena test image as tests/data/lena.pgm.

The image ships as ``scipy/misc/lena.dat`` (a pickled nested list) inside
scipy 0.16.1 wheels. Any platform's wheel works since only that data file is
read; pip downloads it without installing anything.

    python scripts/fetch_lena.py [--dest tests/data/lena.pgm]
"""

import argparse
import pickle
import subprocess
import sys
import tempfile
import zipfile
from pathlib import Path

import numpy as np

from utmf.image import save_pgm

ROOT = Path(__file__).resolve().parents[1]


def fetch(dest):
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [
                sys.executable, "-m", "pip", "download", "--no-deps",
                "--only-binary", ":all:", "--platform", "macosx_10_6_intel",
                "--python-version", "27", "--implementation", "cp", "--abi", "cp27m",
                "scipy==0.16.1", "-d", tmp,
            ],
            check=True,
        )
        wheel = next(Path(tmp).glob("scipy-0.16.1-*.whl"))
        with zipfile.ZipFile(wheel) as zf:
            raw = zf.read("scipy/misc/lena.dat")
    img = np.array(pickle.loads(raw, encoding="latin1"), dtype=np.uint8)
    assert img.shape == (512, 512)
    dest.parent.mkdir(parents=True, exist_ok=True)
    save_pgm(dest, img)
    return dest


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--dest", type=Path, default=ROOT / "tests" / "data" / "lena.pgm")
    print(fetch(parser.parse_args().dest))
