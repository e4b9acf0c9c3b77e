"""Deterministic synthetic test images.

`natural_image` mimics natural-photo statistics (smooth correlated regions
plus fine detail) well enough that the known-plaintext attack finds all its
witnesses, without shipping binary fixtures.
"""

from __future__ import annotations

import numpy as np

from .cipher import RgbImage


def _bilinear(coarse: np.ndarray, height: int, width: int) -> np.ndarray:
    gh, gw = coarse.shape
    y = np.linspace(0.0, gh - 1.0, height)
    x = np.linspace(0.0, gw - 1.0, width)
    y0 = np.clip(np.floor(y).astype(int), 0, gh - 2)
    x0 = np.clip(np.floor(x).astype(int), 0, gw - 2)
    fy = (y - y0)[:, None]
    fx = (x - x0)[None, :]
    tl = coarse[np.ix_(y0, x0)]
    tr = coarse[np.ix_(y0, x0 + 1)]
    bl = coarse[np.ix_(y0 + 1, x0)]
    br = coarse[np.ix_(y0 + 1, x0 + 1)]
    top = tl * (1 - fx) + tr * fx
    bottom = bl * (1 - fx) + br * fx
    return top * (1 - fy) + bottom * fy


def natural_image(width: int, height: int, seed: int) -> RgbImage:
    """Smooth low-frequency content per channel, shared luminance structure,
    and a little per-pixel noise."""
    rng = np.random.default_rng(seed)
    gh, gw = max(2, height // 8), max(2, width // 8)
    luma = _bilinear(rng.uniform(0, 255, (gh, gw)), height, width)
    channels = []
    for _ in range(3):
        chroma = _bilinear(rng.uniform(-60, 60, (gh, gw)), height, width)
        noise = rng.normal(0.0, 8.0, (height, width))
        channels.append(np.clip(luma + chroma + noise, 0, 255))
    stacked = np.stack(channels, axis=-1).round().astype(np.uint8)
    return RgbImage(width, height, stacked.reshape(width * height, 3))


def uniform_random_image(width: int, height: int, seed: int) -> RgbImage:
    rng = np.random.default_rng(seed)
    pixels = rng.integers(0, 256, size=(width * height, 3), dtype=np.uint8)
    return RgbImage(width, height, pixels)


def constant_image(width: int, height: int, rgb: tuple[int, int, int]) -> RgbImage:
    pixels = np.tile(np.array(rgb, dtype=np.uint8), (width * height, 1))
    return RgbImage(width, height, pixels)
