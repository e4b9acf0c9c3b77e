"""Binary PPM round-trip and malformed-input tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnacipher import PpmFormatError, RgbImage, read_ppm, write_ppm


def test_minimal_red_pixel():
    img = read_ppm(b"P6\n1 1\n255\n\xff\x00\x00")
    assert (img.width, img.height) == (1, 1)
    assert img.pixels[0].tolist() == [255, 0, 0]


def test_canonical_black_pixel_bytes():
    img = RgbImage(1, 1, np.zeros((1, 3), dtype=np.uint8))
    assert write_ppm(img) == b"P6\n1 1\n255\n\x00\x00\x00"


def test_left_to_right_order():
    img = read_ppm(b"P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06")
    assert img.pixels[0].tolist() == [1, 2, 3]
    assert img.pixels[1].tolist() == [4, 5, 6]


def test_header_comments_accepted():
    data = b"P6\n# a comment\n2 1 # inline\n255\n" + bytes(6)
    img = read_ppm(data)
    assert (img.width, img.height) == (2, 1)
    # writes never emit comments
    assert b"#" not in write_ppm(img)


def test_write_read_identity():
    rng = np.random.default_rng(0)
    for w, h in [(1, 1), (3, 2), (7, 5)]:
        img = RgbImage(w, h, rng.integers(0, 256, (w * h, 3), dtype=np.uint8))
        assert read_ppm(write_ppm(img)) == img


def test_read_write_identity_on_canonical_input():
    data = b"P6\n2 2\n255\n" + bytes(range(12))
    assert write_ppm(read_ppm(data)) == data


@settings(max_examples=25, deadline=None)
@given(w=st.integers(1, 8), h=st.integers(1, 8), seed=st.integers(0, 2**31))
def test_roundtrip_property(w, h, seed):
    rng = np.random.default_rng(seed)
    img = RgbImage(w, h, rng.integers(0, 256, (w * h, 3), dtype=np.uint8))
    assert read_ppm(write_ppm(img)) == img


@pytest.mark.parametrize(
    "data",
    [
        b"",
        b"P5\n1 1\n255\n\x00",                      # wrong magic
        b"P6\n0 1\n255\n",                          # zero width
        b"P6\n1 0\n255\n",                          # zero height
        b"P6\n1 1\n65535\n\x00\x00\x00\x00\x00\x00",  # 16-bit maxval
        b"P6\n1 1\n255\n\x00\x00",                  # truncated pixels
        b"P6\n1 1\n255\n\x00\x00\x00\x00",          # trailing bytes
        b"P6\n1 x\n255\n\x00\x00\x00",              # non-numeric header
        b"P6\n1 1\n255",                            # missing separator
    ],
)
def test_malformed_rejected(data):
    with pytest.raises(PpmFormatError):
        read_ppm(data)
