"""Canonical block header model, byte-exact codec, and header digest.

Layout (88 bytes, big-endian, fixed width, declared order):

    parent_digest  32 bytes
    height          8 bytes
    timestamp       8 bytes
    difficulty      8 bytes
    payload_root   32 bytes

The nonce is deliberately excluded: it enters hashing separately in the
matrix derivation, so per-nonce work is exactly n SHA invocations plus
determinants and the header digest is computed once per mining job.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, replace

DIGEST_LEN = 32
ENCODED_LEN = 88
_U64_MAX = (1 << 64) - 1
_LAYOUT = struct.Struct(">32sQQQ32s")


@dataclass(frozen=True)
class BlockHeader:
    """Block metadata carrying the difficulty the nonce must satisfy.

    Field widths are validated at construction. A difficulty of 0 encodes
    fine (the codec is total over field ranges) but is rejected by the
    puzzle verifier and miner, which require difficulty >= 1.
    """

    parent_digest: bytes
    height: int
    timestamp: int
    difficulty: int
    payload_root: bytes
    nonce: int = 0

    def __post_init__(self):
        for name, value in (("parent_digest", self.parent_digest), ("payload_root", self.payload_root)):
            if not isinstance(value, bytes) or len(value) != DIGEST_LEN:
                raise ValueError(f"{name} must be exactly {DIGEST_LEN} bytes")
        for name, value in (
            ("height", self.height),
            ("timestamp", self.timestamp),
            ("difficulty", self.difficulty),
            ("nonce", self.nonce),
        ):
            if not 0 <= value <= _U64_MAX:
                raise ValueError(f"{name} must fit an unsigned 64-bit integer")

    def with_nonce(self, nonce: int) -> "BlockHeader":
        return replace(self, nonce=nonce)

    def to_json_dict(self) -> dict:
        """JSON-friendly form with hex-encoded byte fields (CLI file format)."""
        return {
            "parent_digest": self.parent_digest.hex(),
            "height": self.height,
            "timestamp": self.timestamp,
            "difficulty": self.difficulty,
            "payload_root": self.payload_root.hex(),
            "nonce": self.nonce,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BlockHeader":
        return cls(
            parent_digest=bytes.fromhex(obj["parent_digest"]),
            height=int(obj["height"]),
            timestamp=int(obj["timestamp"]),
            difficulty=int(obj["difficulty"]),
            payload_root=bytes.fromhex(obj["payload_root"]),
            nonce=int(obj.get("nonce", 0)),
        )


def encode(header: BlockHeader) -> bytes:
    """Fixed-width binary form (nonce excluded), always 88 bytes."""
    return _LAYOUT.pack(
        header.parent_digest,
        header.height,
        header.timestamp,
        header.difficulty,
        header.payload_root,
    )


def decode(data: bytes) -> BlockHeader:
    """Inverse of encode. The nonce is not encoded, so it comes back as 0."""
    if len(data) != ENCODED_LEN:
        raise ValueError(f"encoded header must be {ENCODED_LEN} bytes, got {len(data)}")
    parent, height, timestamp, difficulty, payload = _LAYOUT.unpack(data)
    return BlockHeader(
        parent_digest=parent,
        height=height,
        timestamp=timestamp,
        difficulty=difficulty,
        payload_root=payload,
    )


def header_digest(header: BlockHeader) -> bytes:
    """SHA-256 of the canonical encoding; the matrix derivation's seed."""
    return hashlib.sha256(encode(header)).digest()
