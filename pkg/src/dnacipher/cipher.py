"""The encryption pipeline: byte<->digit planes, base encoding, chained
addition, keyed complement, decoding, masking, and the exact reversal.

Images are held in raster order.  Each channel byte expands to four base-4
digits (most significant first), so an L-pixel image becomes three digit
planes of length 4L.  All per-position transforms are vectorised lookups.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dna import ADD, COMPLEMENT, DECODE, ENCODE, SUB, check_rule
from .keystream import Keystreams, SecretKey, keystreams


@dataclass(eq=False)
class RgbImage:
    """8-bit RGB image; `pixels` has shape (width*height, 3) in raster order."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)
        if self.pixels.shape != (self.width * self.height, 3):
            raise ValueError(
                f"pixel buffer shape {self.pixels.shape} does not match "
                f"{self.width}x{self.height} RGB"
            )

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def __eq__(self, other) -> bool:
        if not isinstance(other, RgbImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )


@dataclass(eq=False)
class DigitImage:
    """Per-channel base-4 digit planes of length 4L."""

    width: int
    height: int
    r: np.ndarray
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        n = 4 * self.width * self.height
        for plane in (self.r, self.g, self.b):
            if plane.shape != (n,):
                raise ValueError(f"digit planes must have length {n}")


@dataclass(eq=False)
class DnaTriples:
    """Per-channel base sequences of length 4L (internal base codes)."""

    width: int
    height: int
    r: np.ndarray
    g: np.ndarray
    b: np.ndarray


def bytes_to_digits(channel: np.ndarray) -> np.ndarray:
    """Expand bytes to base-4 digits, most significant digit first."""
    out = np.empty(4 * channel.size, dtype=np.uint8)
    out[0::4] = (channel >> 6) & 3
    out[1::4] = (channel >> 4) & 3
    out[2::4] = (channel >> 2) & 3
    out[3::4] = channel & 3
    return out


def digits_to_bytes(digits: np.ndarray) -> np.ndarray:
    return (digits[0::4] << 6) | (digits[1::4] << 4) | (digits[2::4] << 2) | digits[3::4]


def image_to_digits(img: RgbImage) -> DigitImage:
    return DigitImage(
        img.width,
        img.height,
        r=bytes_to_digits(img.pixels[:, 0]),
        g=bytes_to_digits(img.pixels[:, 1]),
        b=bytes_to_digits(img.pixels[:, 2]),
    )


def digits_to_image(d: DigitImage) -> RgbImage:
    pixels = np.stack(
        [digits_to_bytes(d.r), digits_to_bytes(d.g), digits_to_bytes(d.b)], axis=1
    )
    return RgbImage(d.width, d.height, pixels)


def encode_image(d: DigitImage, rule: int) -> DnaTriples:
    """Step (a): map digit planes to base sequences under one rule."""
    row = ENCODE[check_rule(rule) - 1]
    return DnaTriples(d.width, d.height, row[d.r], row[d.g], row[d.b])


def decode_image(n: DnaTriples, rule: int) -> DigitImage:
    """Step (d): map base sequences back to digit planes under one rule."""
    row = DECODE[check_rule(rule) - 1]
    return DigitImage(n.width, n.height, row[n.r], row[n.g], row[n.b])


def addition_step(d: DnaTriples) -> DnaTriples:
    """Step (b): chained base addition; the b output reuses the fresh g
    output, not the g input."""
    nr = ADD[d.r, d.g]
    ng = ADD[d.g, d.b]
    nb = ADD[ng, d.b]
    return DnaTriples(d.width, d.height, nr, ng, nb)


def inverse_addition_step(n: DnaTriples) -> DnaTriples:
    db = SUB[n.b, n.g]
    dg = SUB[n.g, db]
    dr = SUB[n.r, dg]
    return DnaTriples(n.width, n.height, dr, dg, db)


def complement_step(n: DnaTriples, z: np.ndarray) -> DnaTriples:
    """Step (c): complement all three bases wherever z is 1 (self-inverse)."""
    if z.shape != n.r.shape:
        raise ValueError("complement selector length must match the digit planes")
    flip = z.astype(bool)
    return DnaTriples(
        n.width,
        n.height,
        np.where(flip, COMPLEMENT[n.r], n.r),
        np.where(flip, COMPLEMENT[n.g], n.g),
        np.where(flip, COMPLEMENT[n.b], n.b),
    )


def mask_step(d: DigitImage, t: np.ndarray) -> DigitImage:
    """Step (e): XOR every channel digit with the mask digit (self-inverse)."""
    if t.shape != d.r.shape:
        raise ValueError("mask length must match the digit planes")
    return DigitImage(d.width, d.height, d.r ^ t, d.g ^ t, d.b ^ t)


def _streams_for(img: RgbImage, key: SecretKey, streams: Keystreams | None) -> Keystreams:
    if streams is None:
        return keystreams(key, img.pixel_count)
    if streams.pixel_count != img.pixel_count:
        raise ValueError("injected keystreams do not match the image size")
    return streams


def encrypt(img: RgbImage, key: SecretKey, streams: Keystreams | None = None) -> RgbImage:
    """Run the full pipeline.  `streams` bypasses the logistic map (test
    hook / keystream reuse); rules still come from `key`."""
    ks = _streams_for(img, key, streams)
    d = image_to_digits(img)
    n = addition_step(encode_image(d, key.k1))
    masked = mask_step(decode_image(complement_step(n, ks.z), key.k2), ks.t)
    return digits_to_image(masked)


def decrypt(img: RgbImage, key: SecretKey, streams: Keystreams | None = None) -> RgbImage:
    """Exact inverse of encrypt for the same key (and injected streams)."""
    ks = _streams_for(img, key, streams)
    d = image_to_digits(img)
    n = encode_image(mask_step(d, ks.t), key.k2)
    plain = decode_image(inverse_addition_step(complement_step(n, ks.z)), key.k1)
    return digits_to_image(plain)
