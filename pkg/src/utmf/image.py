"""Grayscale image plumbing: PGM I/O, border padding and window extraction.

Images are 2-D ``uint8`` numpy arrays indexed ``img[row, column]`` with the
origin at the top-left corner. Pixel order is row-major throughout.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._validation import check_image, check_window_size

_WHITESPACE = b" \t\r\n\v\f"
_ASCII_LINE_LIMIT = 70


class PGMError(ValueError):
    """Malformed PGM data. ``offset`` is the byte position of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _next_token(data, pos):
    """Return (token, start, end) of the next header token, skipping comments."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch in _WHITESPACE:
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos : pos + 1] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], start, pos


def _header_int(data, pos, what):
    tok, start, end = _next_token(data, pos)
    if not tok:
        raise PGMError(f"missing {what}", start)
    if not tok.isdigit():
        raise PGMError(f"invalid {what} {tok!r}", start)
    return int(tok), start, end


def read_pgm(data):
    """Decode a P5 (binary) or P2 (ASCII) PGM file with maxval 255.

    Raises
    ------
    PGMError
        On a malformed header, a maxval other than 255, out-of-range ASCII
        samples or truncated pixel data.
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise PGMError(f"bad magic number {magic!r}, expected b'P5' or b'P2'", 0)
    if len(data) > 2 and data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise PGMError("magic number must be followed by whitespace", 2)

    width, start, pos = _header_int(data, 2, "width")
    if width == 0:
        raise PGMError("width must be positive", start)
    height, start, pos = _header_int(data, pos, "height")
    if height == 0:
        raise PGMError("height must be positive", start)
    maxval, start, pos = _header_int(data, pos, "maxval")
    if maxval != 255:
        raise PGMError(f"maxval must be 255, got {maxval}", start)
    count = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
            raise PGMError("missing whitespace after maxval", pos)
        pos += 1
        payload = data[pos : pos + count]
        if len(payload) < count:
            raise PGMError(
                f"truncated pixel data: expected {count} bytes, got {len(payload)}",
                pos + len(payload),
            )
        return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()

    values = []
    for _ in range(count):
        tok, start, pos = _next_token(data, pos)
        if not tok:
            raise PGMError(
                f"truncated pixel data: expected {count} samples, got {len(values)}",
                start,
            )
        if not tok.isdigit() or int(tok) > 255:
            raise PGMError(f"invalid sample {tok!r}", start)
        values.append(int(tok))
    return np.array(values, dtype=np.uint8).reshape(height, width)


def write_pgm(img, ascii=False):
    """Encode ``img`` as PGM bytes, binary P5 by default.

    ASCII output keeps every line within 70 characters.
    """
    img = check_image(img)
    height, width = img.shape
    magic = "P2" if ascii else "P5"
    header = f"{magic}\n{width} {height}\n255\n".encode("ascii")
    if not ascii:
        return header + img.tobytes()

    lines = []
    for row in img:
        line = ""
        for value in row:
            tok = str(int(value))
            if line and len(line) + 1 + len(tok) > _ASCII_LINE_LIMIT:
                lines.append(line)
                line = tok
            else:
                line = f"{line} {tok}" if line else tok
        lines.append(line)
    return header + ("\n".join(lines) + "\n").encode("ascii")


def load_pgm(path):
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, img, ascii=False):
    Path(path).write_bytes(write_pgm(img, ascii=ascii))


def pad_replicate(img, margin):
    """Grow ``img`` by ``margin`` pixels on every side, copying the nearest edge."""
    img = check_image(img)
    if int(margin) != margin or margin < 0:
        raise ValueError(f"margin must be a non-negative integer, got {margin}")
    if margin == 0:
        return img.copy()
    return np.pad(img, int(margin), mode="edge")


@dataclass(frozen=True)
class Window:
    """A ``size`` x ``size`` neighbourhood, values in row-major order."""

    size: int
    values: tuple

    def __post_init__(self):
        check_window_size(self.size)
        if len(self.values) != self.size * self.size:
            raise ValueError(
                f"window of size {self.size} needs {self.size ** 2} values, "
                f"got {len(self.values)}"
            )

    @property
    def center(self):
        return self.values[(self.size * self.size - 1) // 2]

    @classmethod
    def from_values(cls, values):
        values = tuple(int(v) for v in values)
        size = int(round(len(values) ** 0.5))
        return cls(size, values)


def window_at(padded, x, y, size=3):
    """Extract the window of ``padded`` centred at column ``x``, row ``y``."""
    padded = np.asarray(padded)
    size = check_window_size(size)
    m = size // 2
    height, width = padded.shape
    if not (m <= x < width - m and m <= y < height - m):
        raise IndexError(
            f"{size}x{size} window centred at (x={x}, y={y}) leaves the "
            f"{width}x{height} image"
        )
    block = padded[y - m : y + m + 1, x - m : x + m + 1]
    return Window(size, tuple(int(v) for v in block.ravel()))


def iter_windows(img, size=3):
    """Yield ``(x, y, Window)`` for every pixel of ``img`` in row-major order."""
    img = check_image(img)
    m = size // 2
    padded = pad_replicate(img, m)
    height, width = img.shape
    for y in range(height):
        for x in range(width):
            yield x, y, window_at(padded, x + m, y + m, size)


def window_stack(img, size=3):
    """All neighbourhoods at once: array of shape (size*size, H, W).

    Plane ``k`` holds, for every pixel, the ``k``-th row-major element of its
    replicate-padded window; plane ``size*size // 2`` is the image itself.
    """
    img = check_image(img)
    size = check_window_size(size)
    height, width = img.shape
    padded = pad_replicate(img, size // 2)
    return np.stack(
        [padded[r : r + height, c : c + width] for r in range(size) for c in range(size)]
    )
