"""8-bit grayscale images and binary PGM (P5) serialization.

Only maxval 255 is supported. The writer emits one canonical header form;
round-trip verification therefore expects registered images in that form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class PgmError(ValueError):
    pass


@dataclass(frozen=True)
class GrayImage:
    pixels: np.ndarray  # (height, width) uint8

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.uint8)
        if p.ndim != 2 or p.size == 0:
            raise ValueError("pixels must be a nonempty 2-d array")
        object.__setattr__(self, "pixels", p)

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


def pgm_bytes(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def parse_pgm(blob: bytes, offset: int = 0) -> tuple[GrayImage, int]:
    """Parse one P5 image starting at offset; returns (image, next offset)."""
    tokens = []
    pos = offset
    if blob[pos:pos + 2] != b"P5":
        raise PgmError(f"not a P5 file at offset {offset}")
    pos += 2
    while len(tokens) < 3:
        while pos < len(blob) and blob[pos:pos + 1].isspace():
            pos += 1
        if blob[pos:pos + 1] == b"#":
            while pos < len(blob) and blob[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(blob) and not blob[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise PgmError("truncated PGM header")
        tokens.append(blob[start:pos])
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as e:
        raise PgmError(f"bad PGM header token: {e}") from e
    if maxval != 255:
        raise PgmError(f"only maxval 255 supported, got {maxval}")
    if width <= 0 or height <= 0:
        raise PgmError("nonpositive dimensions")
    pos += 1  # single whitespace byte after maxval
    n = width * height
    raster = blob[pos:pos + n]
    if len(raster) != n:
        raise PgmError("truncated PGM raster")
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return GrayImage(pixels), pos + n


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as f:
        img, _ = parse_pgm(f.read())
    return img


def write_pgm(path, img: GrayImage) -> None:
    with open(path, "wb") as f:
        f.write(pgm_bytes(img))
