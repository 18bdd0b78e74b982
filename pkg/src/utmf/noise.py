"""Seeded noise injection.

Every injector draws from ``numpy.random.default_rng(seed)`` (PCG64) and
consumes a fixed number of variates per pixel regardless of the parameters,
so the same seed always maps to the same stream:

* salt-and-pepper: one uniform ``random()`` per pixel;
* random-valued impulse: one uniform ``random()`` per pixel, then one
  ``integers(0, 256)`` per pixel;
* Gaussian: one ``normal()`` per pixel;
* mixed: ``SeedSequence(seed).spawn(2)`` gives the Gaussian and the impulse
  stage their own child seeds, in that order.

Draw order within an image is row-major.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_image, check_probability, check_same_shape

NOISE_KINDS = ("sp", "rvin", "gaussian", "mixed")


def add_salt_pepper(img, p, q, seed=0):
    """Set each pixel to 0 with probability ``p`` and to 255 with probability ``q``."""
    img = check_image(img)
    p = check_probability(p, "p")
    q = check_probability(q, "q")
    if p + q > 1.0 + 1e-12:
        raise ValueError(f"p + q must not exceed 1, got {p + q}")
    u = np.random.default_rng(seed).random(img.shape)
    out = img.copy()
    out[u < p] = 0
    out[(u >= p) & (u < p + q)] = 255
    return out


def add_random_impulse(img, d, seed=0):
    """Replace each pixel, with probability ``d``, by a uniform value in [0, 255]."""
    img = check_image(img)
    d = check_probability(d, "d")
    rng = np.random.default_rng(seed)
    hit = rng.random(img.shape) < d
    values = rng.integers(0, 256, size=img.shape, dtype=np.uint8)
    return np.where(hit, values, img)


def add_gaussian(img, var, seed=0):
    """Additive zero-mean Gaussian noise; ``var`` is on the [0, 1] intensity scale."""
    img = check_image(img)
    if var < 0:
        raise ValueError(f"variance must be non-negative, got {var}")
    g = np.random.default_rng(seed).normal(0.0, np.sqrt(var), img.shape)
    # round half up, then clamp
    noisy = np.floor(img + 255.0 * g + 0.5)
    return np.clip(noisy, 0, 255).astype(np.uint8)


def add_mixed(img, d, var, seed=0):
    """Gaussian noise followed by symmetric salt-and-pepper of total density ``d``."""
    d = check_probability(d, "d")
    gauss_seed, impulse_seed = np.random.SeedSequence(seed).spawn(2)
    stage = add_gaussian(img, var, gauss_seed)
    return add_salt_pepper(stage, d / 2, d / 2, impulse_seed)


def measure_density(clean, noisy):
    """Fraction of pixel positions where ``noisy`` differs from ``clean``."""
    clean = check_image(clean, name="clean")
    noisy = check_image(noisy, name="noisy")
    check_same_shape(clean, noisy, names=["clean", "noisy"])
    return float(np.count_nonzero(clean != noisy)) / clean.size


@dataclass(frozen=True)
class NoiseSpec:
    """A noise regime plus seed. ``level`` is a density, or a variance for
    ``gaussian``; ``var`` is the Gaussian part of ``mixed``."""

    kind: str
    level: float
    seed: int = 0
    var: float = 0.001

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; expected one of {NOISE_KINDS}")
        if self.kind == "gaussian":
            if self.level < 0:
                raise ValueError("variance must be non-negative")
        else:
            check_probability(self.level, "density")
        if self.var < 0:
            raise ValueError("variance must be non-negative")

    def apply(self, img):
        if self.kind == "sp":
            return add_salt_pepper(img, self.level / 2, self.level / 2, self.seed)
        if self.kind == "rvin":
            return add_random_impulse(img, self.level, self.seed)
        if self.kind == "gaussian":
            return add_gaussian(img, self.level, self.seed)
        return add_mixed(img, self.level, self.var, self.seed)
