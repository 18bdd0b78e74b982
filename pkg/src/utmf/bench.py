"""Density sweeps and the verification run behind ``utmf sweep`` / ``utmf verify``."""

import csv
import io
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .filters import FilterParams, denoise_pa, mean_filter, smf
from .fsmd import DEFAULT_COSTS, fsmd_run_image
from .image import load_pgm
from .metrics import QualityReport, format_number
from .noise import NOISE_KINDS, NoiseSpec
from .sorting import SHIPPED_NETWORK, verify_network

FILTERS = {
    "pa": lambda img, params: denoise_pa(img, params),
    "smf3": lambda img, params: smf(img, 3),
    "smf5": lambda img, params: smf(img, 5),
    "mean": lambda img, params: mean_filter(img, 3),
}

CSV_HEADER = ("image", "filter", "noise_kind", "level", "seed", "mse", "psnr", "ief")

DEFAULT_DENSITIES = tuple(round(0.1 * i, 1) for i in range(1, 10))
DEFAULT_VARIANCES = tuple(round(0.001 * i, 3) for i in range(1, 10))


def run_filter(name, img, params=FilterParams()):
    try:
        fn = FILTERS[name]
    except KeyError:
        raise ValueError(f"unknown filter {name!r}; expected one of {sorted(FILTERS)}") from None
    return fn(img, params)


@dataclass
class SweepSpec:
    images: list
    noise: str = "sp"
    levels: list = field(default_factory=list)
    filters: list = field(default_factory=lambda: ["pa", "smf3"])
    seeds: list = field(default_factory=lambda: [0])
    params: FilterParams = FilterParams()
    var: float = 0.001
    jobs: int = 1

    def __post_init__(self):
        if self.noise not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.noise!r}; expected one of {NOISE_KINDS}")
        if not self.levels:
            self.levels = list(
                DEFAULT_VARIANCES if self.noise == "gaussian" else DEFAULT_DENSITIES
            )
        if not self.images:
            raise ValueError("a sweep needs at least one image")
        if not self.filters:
            raise ValueError("a sweep needs at least one filter")
        if not self.seeds:
            raise ValueError("a sweep needs at least one seed")
        for name in self.filters:
            if name not in FILTERS:
                raise ValueError(f"unknown filter {name!r}; expected one of {sorted(FILTERS)}")


_LIST_KEYS = {"images", "levels", "filters", "seeds"}


def parse_config(text):
    """Parse ``key = value`` lines; list values are comma separated.

    Blank lines and lines starting with ``#`` are ignored.
    """
    config = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key in _LIST_KEYS:
            config[key] = [v.strip() for v in value.split(",") if v.strip()]
        else:
            config[key] = value
    return config


def sweep_spec_from_config(config):
    """Build a :class:`SweepSpec` from string-valued settings."""
    known = _LIST_KEYS | {"noise", "t", "t1", "var", "jobs"}
    unknown = set(config) - known
    if unknown:
        raise ValueError(f"unknown sweep settings: {', '.join(sorted(unknown))}")
    return SweepSpec(
        images=list(config.get("images", [])),
        noise=config.get("noise", "sp"),
        levels=[float(v) for v in config.get("levels", [])],
        filters=list(config.get("filters", ["pa", "smf3"])),
        seeds=[int(v) for v in config.get("seeds", ["0"])],
        params=FilterParams(int(config.get("t", 40)), int(config.get("t1", 20))),
        var=float(config.get("var", 0.001)),
        jobs=int(config.get("jobs", 1)),
    )


def run_sweep(spec):
    """Evaluate every (image, filter, level, seed) cell.

    All images are loaded before any work starts. Rows come back in that
    nesting order regardless of ``spec.jobs``.
    """
    images = {path: load_pgm(path) for path in spec.images}

    def cell(key):
        path, name, level, seed = key
        clean = images[path]
        noisy = NoiseSpec(spec.noise, level, seed, spec.var).apply(clean)
        restored = run_filter(name, noisy, spec.params)
        return QualityReport.evaluate(clean, noisy, restored)

    keys = list(itertools.product(spec.images, spec.filters, spec.levels, spec.seeds))
    if spec.jobs > 1:
        with ThreadPoolExecutor(spec.jobs) as pool:
            reports = list(pool.map(cell, keys))
    else:
        reports = [cell(k) for k in keys]
    return [(*key, report) for key, report in zip(keys, reports)]


def format_sweep_csv(rows, noise_kind):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for path, name, level, seed, report in rows:
        writer.writerow(
            [
                Path(path).name,
                name,
                noise_kind,
                format_number(level),
                seed,
                format_number(report.mse),
                format_number(report.psnr),
                format_number(report.ief),
            ]
        )
    return buf.getvalue()


def binary_extreme_fields(value=128, size=5):
    """Every 0/255 pattern of a 3x3 block centred in a constant field."""
    m = size // 2
    for bits in itertools.product((0, 255), repeat=9):
        img = np.full((size, size), value, dtype=np.uint8)
        img[m - 1 : m + 2, m - 1 : m + 2] = np.array(bits, dtype=np.uint8).reshape(3, 3)
        yield img


def fsmd_equivalence(images, params=FilterParams(), cycle_costs=None):
    """Compare the scheduler model with :func:`denoise_pa` on each image.

    Returns ``(mismatching image indices, first CycleReport, set of
    per-window cycle counts)``.
    """
    mismatches, per_window, first = [], set(), None
    for i, img in enumerate(images):
        out, report = fsmd_run_image(img, params, cycle_costs)
        if first is None:
            first = report
        per_window.add(report.cycles_per_window)
        if not np.array_equal(out, denoise_pa(img, params)):
            mismatches.append(i)
    return mismatches, first, per_window


def verification_images(seed=2024, count=4, size=32):
    rng = np.random.default_rng(seed)
    kinds = itertools.cycle(NOISE_KINDS)
    images = []
    for i in range(count):
        clean = rng.integers(0, 256, (size, size), dtype=np.uint8)
        images.append(NoiseSpec(next(kinds), 0.5 if i % 2 == 0 else 0.003, seed + i).apply(clean))
    return images


def run_verification(network=SHIPPED_NETWORK, params=FilterParams(), cycle_costs=None):
    """Network check plus scheduler equivalence; returns ``(ok, report_text)``."""
    net = verify_network(network)
    images = list(binary_extreme_fields()) + verification_images()
    mismatches, first, per_window = fsmd_equivalence(images, params, cycle_costs)
    fsmd_ok = not mismatches and len(per_window) == 1
    costs = DEFAULT_COSTS if cycle_costs is None else cycle_costs
    lines = [
        "[network]",
        net.to_text().rstrip("\n"),
        "",
        "[fsmd]",
        f"images_checked={len(images)}",
        f"mismatching_images={len(mismatches)}",
        f"constant_schedule={'yes' if len(per_window) == 1 else 'no'}",
        "state_costs=" + ",".join(f"{s.value}:{c}" for s, c in costs.items()),
        first.to_text().rstrip("\n"),
        f"status={'PASS' if fsmd_ok else 'FAIL'}",
    ]
    return net.ok and fsmd_ok, "\n".join(lines) + "\n"
