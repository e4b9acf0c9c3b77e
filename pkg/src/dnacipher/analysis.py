"""Quantifies the cipher's sensitivity defects.

Single-bit plaintext flips never escape the flipped pixel's four-digit block
(no diffusion), a wrong key still decrypts to visually correlated channels,
and equal g/b cipher digits leak plaintext structure key-independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cipher import RgbImage, encrypt, decrypt, image_to_digits
from .keystream import SecretKey, keystreams

# The design's advertised diffusion bound: a single plaintext bit flip is
# claimed to influence at most this many ciphertext bits.  Reported next to
# the measured maximum, never asserted.
CLAIMED_MAX_CHANGED_BITS = 4

_CHANNELS = ("R", "G", "B")


@dataclass
class AvalancheReport:
    trials: int
    locality_violations: int
    max_changed_digit_positions: int
    max_changed_cipher_bits: int
    per_channel_footprint: dict[str, tuple[int, int]] = field(default_factory=dict)


@dataclass
class KeyLeakReport:
    per_channel_correlation: tuple[float, float, float]
    exact_pixel_matches: int
    structure_leak_match_rate: float


def _digit_planes(img: RgbImage, key: SecretKey, streams) -> np.ndarray:
    d = image_to_digits(encrypt(img, key, streams))
    return np.stack([d.r, d.g, d.b])


def measure_avalanche(
    img: RgbImage, key: SecretKey, trials: int, seed: int = 0
) -> AvalancheReport:
    """Flip one random plaintext bit per trial, re-encrypt, and diff the
    cipher digit planes.

    Locality violations count trials where any changed digit lies outside the
    flipped pixel's block; per-channel footprints track the worst digit and
    bit change counts keyed by the flipped channel.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    streams = keystreams(key, img.pixel_count)
    baseline = _digit_planes(img, key, streams)
    rng = np.random.default_rng(seed)
    violations = 0
    max_digits = 0
    max_bits = 0
    footprint = {ch: (0, 0) for ch in _CHANNELS}
    popcount = np.array([0, 1, 1, 2], dtype=np.int64)

    for _ in range(trials):
        pixel = int(rng.integers(img.pixel_count))
        channel = int(rng.integers(3))
        bit = int(rng.integers(8))
        flipped = RgbImage(img.width, img.height, img.pixels.copy())
        flipped.pixels[pixel, channel] ^= 1 << bit
        mutated = _digit_planes(flipped, key, streams)

        delta = baseline ^ mutated
        changed = np.nonzero(delta)
        positions = changed[1]
        block = slice(4 * pixel, 4 * pixel + 4)
        if positions.size and (
            positions.min() < block.start or positions.max() >= block.stop
        ):
            violations += 1
        digits_changed = int(positions.size)
        bits_changed = int(popcount[delta[changed]].sum())
        max_digits = max(max_digits, digits_changed)
        max_bits = max(max_bits, bits_changed)
        name = _CHANNELS[channel]
        footprint[name] = (
            max(footprint[name][0], digits_changed),
            max(footprint[name][1], bits_changed),
        )

    return AvalancheReport(
        trials=trials,
        locality_violations=violations,
        max_changed_digit_positions=max_digits,
        max_changed_cipher_bits=max_bits,
        per_channel_footprint=footprint,
    )


def detect_structure_leak(cipher: RgbImage) -> np.ndarray:
    """Indicator of equal g/b cipher digits per position.

    Equals the indicator of plaintext b digits hitting the digit that k1 maps
    to C, for every key: a plaintext property readable from ciphertext alone.
    """
    d = image_to_digits(cipher)
    return d.g == d.b


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xf = x.astype(np.float64)
    yf = y.astype(np.float64)
    xc = xf - xf.mean()
    yc = yf - yf.mean()
    denom = np.sqrt((xc * xc).sum() * (yc * yc).sum())
    if denom == 0.0:
        return 0.0
    return float((xc * yc).sum() / denom)


def measure_wrong_key_leak(
    cipher: RgbImage, true_plain: RgbImage, wrong_key: SecretKey
) -> KeyLeakReport:
    """Decrypt with a wrong key and compare against the true plaintext:
    per-channel Pearson correlation, exactly-matching pixel count, and how
    well the wrong result's re-encryption reproduces the ciphertext's
    equal-g/b pattern."""
    if (cipher.width, cipher.height) != (true_plain.width, true_plain.height):
        raise ValueError("cipher and plaintext geometries differ")
    wrong = decrypt(cipher, wrong_key)
    corr = tuple(
        _pearson(wrong.pixels[:, c], true_plain.pixels[:, c]) for c in range(3)
    )
    matches = int(np.all(wrong.pixels == true_plain.pixels, axis=1).sum())
    reencrypted = encrypt(wrong, wrong_key)
    rate = float(
        np.mean(detect_structure_leak(reencrypted) == detect_structure_leak(cipher))
    )
    return KeyLeakReport(
        per_channel_correlation=corr,
        exact_pixel_matches=matches,
        structure_leak_match_rate=rate,
    )


def format_avalanche_report(r: AvalancheReport) -> str:
    lines = [
        f"trials={r.trials}",
        f"locality_violations={r.locality_violations}",
        f"max_changed_digit_positions={r.max_changed_digit_positions}",
        f"max_changed_cipher_bits={r.max_changed_cipher_bits}",
        f"claimed_max_changed_bits={CLAIMED_MAX_CHANGED_BITS}",
    ]
    for ch in _CHANNELS:
        digits, bits = r.per_channel_footprint[ch]
        lines.append(f"footprint_{ch}_digits={digits}")
        lines.append(f"footprint_{ch}_bits={bits}")
    return "\n".join(lines) + "\n"


def format_key_leak_report(r: KeyLeakReport) -> str:
    lines = [
        f"correlation_R={r.per_channel_correlation[0]:.6f}",
        f"correlation_G={r.per_channel_correlation[1]:.6f}",
        f"correlation_B={r.per_channel_correlation[2]:.6f}",
        f"exact_pixel_matches={r.exact_pixel_matches}",
        f"structure_leak_match_rate={r.structure_leak_match_rate:.6f}",
    ]
    return "\n".join(lines) + "\n"
