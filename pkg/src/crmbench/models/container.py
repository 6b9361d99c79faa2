"""Self-describing encoded artifact and byte-exact verification.

Layout (little-endian multi-byte integers):
  magic "CRM1" | version u8 | model_id len u16 + utf-8 | header len u32 +
  bytes | original_length u64 | payload bit-length u64 | payload bytes |
  sha256 of the original (32 bytes)
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from typing import Callable

from ..coding import BitString
from .core import ProbModel

MAGIC = b"CRM1"
FORMAT_VERSION = 1


class ContainerError(ValueError):
    pass


@dataclass(frozen=True)
class EncodedContainer:
    model_id: str
    model_header: bytes
    original_length: int
    payload: BitString
    checksum: bytes

    def to_bytes(self) -> bytes:
        mid = self.model_id.encode("utf-8")
        out = bytearray()
        out += MAGIC
        out += struct.pack("<B", FORMAT_VERSION)
        out += struct.pack("<H", len(mid)) + mid
        out += struct.pack("<I", len(self.model_header)) + self.model_header
        out += struct.pack("<Q", self.original_length)
        out += struct.pack("<Q", self.payload.length_bits)
        out += self.payload.data
        out += self.checksum
        return bytes(out)

    @property
    def total_bits(self) -> int:
        return 8 * len(self.to_bytes())

    @classmethod
    def from_bytes(cls, blob: bytes) -> "EncodedContainer":
        try:
            if blob[:4] != MAGIC:
                raise ContainerError(f"bad magic {blob[:4]!r}")
            off = 4
            (version,) = struct.unpack_from("<B", blob, off)
            off += 1
            if version != FORMAT_VERSION:
                raise ContainerError(f"unsupported version {version}")
            (midlen,) = struct.unpack_from("<H", blob, off)
            off += 2
            model_id = blob[off:off + midlen].decode("utf-8")
            off += midlen
            (hlen,) = struct.unpack_from("<I", blob, off)
            off += 4
            header = blob[off:off + hlen]
            if len(header) != hlen:
                raise ContainerError("truncated model header")
            off += hlen
            (orig_len,) = struct.unpack_from("<Q", blob, off)
            off += 8
            (payload_bits,) = struct.unpack_from("<Q", blob, off)
            off += 8
            nbytes = (payload_bits + 7) // 8
            payload = blob[off:off + nbytes]
            if len(payload) != nbytes:
                raise ContainerError("truncated payload")
            off += nbytes
            checksum = blob[off:off + 32]
            if len(checksum) != 32:
                raise ContainerError("truncated checksum")
            return cls(model_id, header, orig_len, BitString(payload, payload_bits), checksum)
        except (struct.error, IndexError, UnicodeDecodeError) as e:
            raise ContainerError(f"malformed container: {e}") from e


def checksum256(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()


def encode_container(model: ProbModel, raw: bytes) -> EncodedContainer:
    return EncodedContainer(
        model_id=model.model_id,
        model_header=model.header_bytes(),
        original_length=len(raw),
        payload=model.encode_payload(raw),
        checksum=checksum256(raw),
    )


def decode_container(container: EncodedContainer,
                     resolver: Callable[[str, bytes], ProbModel]) -> bytes:
    model = resolver(container.model_id, container.model_header)
    return model.decode_payload(container.payload, container.original_length)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    decoded_checksum: bytes
    byte_length: int
    first_mismatch_offset: int | None


def verify_roundtrip(original: bytes, container: EncodedContainer,
                     resolver: Callable[[str, bytes], ProbModel]) -> VerifyReport:
    """Decode the container and compare byte-for-byte against the original."""
    decoded = decode_container(container, resolver)
    digest = checksum256(decoded)
    if decoded == original and digest == container.checksum:
        return VerifyReport(True, digest, len(decoded), None)
    offset = None
    for i, (a, b) in enumerate(zip(original, decoded)):
        if a != b:
            offset = i
            break
    if offset is None and len(original) != len(decoded):
        offset = min(len(original), len(decoded))
    return VerifyReport(False, digest, len(decoded), offset)
