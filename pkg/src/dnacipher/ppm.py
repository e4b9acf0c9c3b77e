"""Bit-exact binary PPM (P6) reading and writing.

Reads accept `#` comments inside the header; writes always emit the canonical
`P6\\n<w> <h>\\n255\\n` header so identical images serialize to identical
bytes.
"""

from __future__ import annotations

import numpy as np

from .cipher import RgbImage

_WHITESPACE = b" \t\r\n\x0b\x0c"


class PpmFormatError(ValueError):
    pass


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        ch = data[pos:pos + 1]
        if ch == b"#":
            while pos < n and data[pos:pos + 1] not in b"\r\n":
                pos += 1
        elif ch in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise PpmFormatError("unexpected end of header")
    start = pos
    while pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    if not token.isdigit():
        raise PpmFormatError(f"malformed {what}: {token!r}")
    return int(token), pos


def read_ppm(data: bytes) -> RgbImage:
    magic, pos = _next_token(data, 0)
    if magic != b"P6":
        raise PpmFormatError(f"not a binary PPM (magic {magic!r})")
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width == 0 or height == 0:
        raise PpmFormatError("image dimensions must be positive")
    if maxval != 255:
        raise PpmFormatError(f"only maxval 255 is supported, got {maxval}")
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise PpmFormatError("missing whitespace after maxval")
    pos += 1
    body = data[pos:]
    expected = 3 * width * height
    if len(body) < expected:
        raise PpmFormatError(
            f"truncated pixel data: expected {expected} bytes, got {len(body)}"
        )
    if len(body) > expected:
        raise PpmFormatError(f"{len(body) - expected} trailing bytes after pixel data")
    pixels = np.frombuffer(body, dtype=np.uint8).reshape(width * height, 3).copy()
    return RgbImage(width, height, pixels)


def write_ppm(img: RgbImage) -> bytes:
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()
