import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from utmf.image import (
    PGMError,
    Window,
    iter_windows,
    pad_replicate,
    read_pgm,
    window_at,
    window_stack,
    write_pgm,
)

from conftest import CASE_A

images = st.tuples(st.integers(1, 40), st.integers(1, 40)).flatmap(
    lambda shape: arrays(np.uint8, shape)
)


def test_read_ascii():
    img = read_pgm(b"P2\n2 2\n255\n0 255 128 64")
    assert img.shape == (2, 2)
    assert img.ravel().tolist() == [0, 255, 128, 64]


def test_read_binary():
    img = read_pgm(b"P5 2 2 255\n" + bytes([0x00, 0xFF, 0x80, 0x40]))
    assert img.ravel().tolist() == [0, 255, 128, 64]


def test_comments_between_header_tokens():
    data = b"P2\n# made by hand\n2 # width\n1\n#maxval next\n255\n3 4\n"
    assert read_pgm(data).tolist() == [[3, 4]]


def test_binary_payload_may_start_with_hash_byte():
    img = read_pgm(b"P5\n2 1\n255\n#\x00")
    assert img.tolist() == [[35, 0]]


def test_truncated_binary():
    data = b"P5\n3 3\n255\n" + bytes(8)
    with pytest.raises(PGMError, match="truncated") as exc:
        read_pgm(data)
    assert exc.value.offset == len(data)


def test_truncated_ascii():
    with pytest.raises(PGMError, match="truncated"):
        read_pgm(b"P2 2 2 255 1 2 3")


@pytest.mark.parametrize(
    "data, message",
    [
        (b"P6\n1 1\n255\n\x00", "magic"),
        (b"P5\n1 1\n65535\n\x00\x00", "maxval"),
        (b"P5\nx 1\n255\n\x00", "width"),
        (b"P5\n0 1\n255\n", "positive"),
        (b"P2\n1 1\n255\n256\n", "invalid sample"),
        (b"P5\n1 1", "maxval"),
    ],
)
def test_malformed(data, message):
    with pytest.raises(PGMError, match=message):
        read_pgm(data)


def test_error_offset_points_at_bad_token():
    with pytest.raises(PGMError) as exc:
        read_pgm(b"P5\n4 4\n100\n")
    assert exc.value.offset == 7


def test_write_single_pixel_binary():
    assert write_pgm(np.array([[7]], dtype=np.uint8)) == b"P5\n1 1\n255\n\x07"


def test_write_ascii_line_length(rng):
    img = rng.integers(0, 256, (5, 100), dtype=np.uint8)
    data = write_pgm(img, ascii=True)
    assert max(len(line) for line in data.split(b"\n")) <= 70
    assert np.array_equal(read_pgm(data), img)


def test_round_trip_512(rng):
    img = rng.integers(0, 256, (512, 512), dtype=np.uint8)
    assert np.array_equal(read_pgm(write_pgm(img)), img)
    assert np.array_equal(read_pgm(write_pgm(img, ascii=True)), img)


@settings(max_examples=60, deadline=None)
@given(img=images, ascii=st.booleans())
def test_round_trip_property(img, ascii):
    assert np.array_equal(read_pgm(write_pgm(img, ascii=ascii)), img)


def test_pad_single_pixel():
    assert pad_replicate(np.array([[9]]), 1).tolist() == [[9] * 3] * 3


def test_pad_zero_margin_is_identity(rng):
    img = rng.integers(0, 256, (4, 7), dtype=np.uint8)
    assert np.array_equal(pad_replicate(img, 0), img)


def test_pad_two_by_two():
    # each corner value fills its own 2x2 quadrant
    padded = pad_replicate(np.array([[1, 2], [3, 4]]), 1)
    assert padded.tolist() == [
        [1, 1, 2, 2],
        [1, 1, 2, 2],
        [3, 3, 4, 4],
        [3, 3, 4, 4],
    ]


def test_pad_rejects_negative_margin():
    with pytest.raises(ValueError):
        pad_replicate(np.zeros((2, 2)), -1)


@settings(max_examples=40, deadline=None)
@given(img=images, margin=st.integers(0, 3))
def test_pad_properties(img, margin):
    padded = pad_replicate(img, margin)
    h, w = img.shape
    assert padded.shape == (h + 2 * margin, w + 2 * margin)
    assert np.array_equal(padded[margin : margin + h, margin : margin + w], img)
    assert set(np.unique(padded)) <= set(np.unique(img))


def test_window_uniform():
    w = window_at(np.full((5, 5), 42, dtype=np.uint8), 2, 2, 3)
    assert w.values == (42,) * 9 and w.center == 42


def test_window_case_a():
    w = window_at(CASE_A, 2, 2, 3)
    assert w.values == (177, 205, 155, 0, 255, 25, 0, 187, 124)
    assert w.center == 255


def test_window_5x5():
    w = window_at(CASE_A, 2, 2, 5)
    assert w.size == 5 and w.values == tuple(CASE_A.ravel())


def test_corner_window_after_padding():
    img = np.array([[1, 2, 3], [4, 5, 6], [7, 8, 9]], dtype=np.uint8)
    w = window_at(pad_replicate(img, 1), 1, 1, 3)
    assert w.values == (1, 1, 2, 1, 1, 2, 4, 4, 5)


def test_window_out_of_bounds():
    with pytest.raises(IndexError):
        window_at(np.zeros((5, 5)), 0, 2, 3)


def test_window_validates_length():
    with pytest.raises(ValueError):
        Window(3, (1, 2, 3))


def test_iter_windows_visits_every_pixel_once(rng):
    img = rng.integers(0, 256, (4, 6), dtype=np.uint8)
    seen = [(x, y) for x, y, _ in iter_windows(img)]
    assert seen == [(x, y) for y in range(4) for x in range(6)]
    assert [w.center for _, _, w in iter_windows(img)] == img.ravel().tolist()


def test_window_stack_matches_window_at(rng):
    img = rng.integers(0, 256, (6, 5), dtype=np.uint8)
    stack = window_stack(img, 3)
    padded = pad_replicate(img, 1)
    for y in range(6):
        for x in range(5):
            assert tuple(stack[:, y, x]) == window_at(padded, x + 1, y + 1).values
