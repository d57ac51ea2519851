"""Seeded, platform-stable hashing for sampling and split assignment."""

import hashlib


def stable_rank(seed, key) -> int:
    """64-bit rank of (seed, key), independent of process and insertion order."""
    digest = hashlib.sha1(f"{seed}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stable_fraction(seed, key) -> float:
    """Deterministic pseudo-uniform value in [0, 1) for (seed, key)."""
    return stable_rank(seed, key) / 2**64
