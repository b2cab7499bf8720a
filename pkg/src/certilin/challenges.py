"""Verifier challenge sources: seeded randomness or Fiat-Shamir hashing.

A challenge source produces uniform elements of [0, p).  The interactive
source wraps a seeded PRNG.  The Fiat-Shamir source derives every draw
from the canonical byte serialization of the session so far (header plus
all recorded messages): the serialization seeds a SHA-256 counter stream
cut into 64-bit little-endian chunks, and each draw consumes chunks under
rejection sampling until one falls below the largest multiple of p.
Consecutive draws with no message in between consume successive chunks.
"""

from __future__ import annotations

import hashlib
from random import Random

from .field import PrimeField


class RandomChallenges:
    """Interactive mode: draws come from a seeded PRNG."""

    needs_material = False

    def __init__(self, rng: Random):
        self.rng = rng

    def draw(self, field: PrimeField, material: bytes) -> int:
        return field.sample(self.rng)


class ScriptedChallenges:
    """Fixed initial draws, then a fallback source; used by tests."""

    def __init__(self, script, fallback):
        self.script = list(script)
        self.fallback = fallback
        self.needs_material = getattr(fallback, "needs_material", True)

    def draw(self, field: PrimeField, material: bytes) -> int:
        if self.script:
            return field.check(self.script.pop(0))
        return self.fallback.draw(field, material)


class _HashStream:
    """64-bit chunk stream: SHA-256(seed || counter) blocks."""

    __slots__ = ("seed", "block", "chunks", "pos")

    def __init__(self, seed: bytes):
        self.seed = seed
        self.block = 0
        self.chunks = ()
        self.pos = 0

    def next_chunk(self) -> int:
        if self.pos >= len(self.chunks):
            digest = hashlib.sha256(
                self.seed + self.block.to_bytes(8, "little")).digest()
            self.chunks = tuple(
                int.from_bytes(digest[i:i + 8], "little") for i in range(0, 32, 8))
            self.pos = 0
            self.block += 1
        out = self.chunks[self.pos]
        self.pos += 1
        return out


class FiatShamirChallenges:
    """Non-interactive mode: challenges are hashes of the session so far."""

    needs_material = True

    def __init__(self):
        self._stream = None
        self._material_digest = None

    def draw(self, field: PrimeField, material: bytes) -> int:
        tag = hashlib.sha256(material).digest()
        if tag != self._material_digest:
            self._material_digest = tag
            self._stream = _HashStream(tag)
        p = field.p
        limit = ((1 << 64) // p) * p
        while True:
            chunk = self._stream.next_chunk()
            if chunk < limit:
                return chunk % p
