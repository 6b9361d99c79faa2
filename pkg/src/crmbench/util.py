"""Small byte-level serialization helpers shared by model headers."""

from __future__ import annotations


def write_uvarint(buf: bytearray, value: int) -> None:
    if value < 0:
        raise ValueError("uvarint is unsigned")
    while True:
        b = value & 0x7F
        value >>= 7
        if value:
            buf.append(b | 0x80)
        else:
            buf.append(b)
            return


def read_uvarint(buf: bytes, offset: int) -> tuple[int, int]:
    value = 0
    shift = 0
    while True:
        if offset >= len(buf):
            raise ValueError("truncated uvarint")
        b = buf[offset]
        offset += 1
        value |= (b & 0x7F) << shift
        if not b & 0x80:
            return value, offset
        shift += 7
        if shift > 63:
            raise ValueError("uvarint too long")
