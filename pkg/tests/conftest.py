import numpy as np
import pytest

from dnacipher import SecretKey
from dnacipher.synth import natural_image

# The fixed experiment keys used throughout: a reference key for the cipher,
# and the mismatched key used to demonstrate the key-sensitivity leak.
TRUE_KEY = SecretKey(1, 7, 0.501, 3.81, 0.401, 3.68)
WRONG_KEY = SecretKey(2, 5, 0.611, 3.781, 0.301, 3.78)


@pytest.fixture
def true_key():
    return TRUE_KEY


@pytest.fixture
def wrong_key():
    return WRONG_KEY


@pytest.fixture(scope="session")
def natural_64():
    return natural_image(64, 64, seed=1)


@pytest.fixture(scope="session")
def natural_64_second():
    return natural_image(64, 64, seed=2)


def random_images(count, width, height, seed=0):
    rng = np.random.default_rng(seed)
    from dnacipher import RgbImage

    for _ in range(count):
        pixels = rng.integers(0, 256, size=(width * height, 3), dtype=np.uint8)
        yield RgbImage(width, height, pixels)
