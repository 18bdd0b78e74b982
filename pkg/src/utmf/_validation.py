"""Input validation helpers shared by the functional API and the estimators."""

import numpy as np


def check_image(img, *, allow_batch=False, name="image"):
    """Return ``img`` as a C-contiguous uint8 array.

    Accepts anything array-like holding integers in [0, 255]. Float input is
    accepted only if every value is integral. A 2-D array is a single image;
    with ``allow_batch`` a 3-D array is read as a stack of images.
    """
    arr = np.asarray(img)
    ndims = (2, 3) if allow_batch else (2,)
    if arr.ndim not in ndims:
        raise ValueError(
            f"{name} must be {' or '.join(f'{d}-D' for d in ndims)}, got {arr.ndim}-D"
        )
    if arr.size == 0 or 0 in arr.shape[-2:]:
        raise ValueError(f"{name} must have positive width and height")
    if arr.dtype == np.uint8:
        return np.ascontiguousarray(arr)
    if arr.dtype.kind == "b" or arr.dtype.kind not in "iuf":
        raise TypeError(f"{name} must hold integer intensities, got dtype {arr.dtype}")
    if arr.dtype.kind == "f" and not np.all(np.isfinite(arr) & (arr == np.round(arr))):
        raise ValueError(f"{name} has non-integral intensities")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError(f"{name} intensities must lie in [0, 255]")
    return np.ascontiguousarray(arr.astype(np.uint8))


def check_same_shape(*images, names=None):
    shapes = [np.shape(im) for im in images]
    if any(s != shapes[0] for s in shapes[1:]):
        names = names or [f"image {i}" for i in range(len(images))]
        desc = ", ".join(f"{n}={s}" for n, s in zip(names, shapes))
        raise ValueError(f"dimension mismatch: {desc}")


def check_probability(value, name):
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def check_window_size(size, allowed=None):
    if int(size) != size or size < 1 or size % 2 == 0:
        raise ValueError(f"window size must be a positive odd integer, got {size}")
    if allowed is not None and size not in allowed:
        raise ValueError(f"window size must be one of {sorted(allowed)}, got {size}")
    return int(size)
