"""Deterministic seed derivation and stable hashing.

Every random choice in the library flows through one of two primitives:
split_seed, which derives independent per-trial seeds from a master seed,
and order_hash, which gives platform-stable pseudorandom sort keys for the
tower orderings. Both are pure functions of their inputs.
"""

import hashlib

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """One SplitMix64 step: map a 64-bit state to a well-mixed 64-bit value."""
    z = (state + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def split_seed(master: int, index: int) -> int:
    """Derive the index-th child seed from a master seed.

    The split convention, used for parallel trials, is
    splitmix64(master xor splitmix64(index)); children of one master are
    pairwise distinct mixed streams and the derivation is identical on
    every platform.
    """
    return splitmix64((master & _MASK64) ^ splitmix64(index & _MASK64))


def order_hash(*parts: object) -> bytes:
    """Stable 16-byte digest of a tuple of ints and tuples of ints."""
    h = hashlib.blake2b(digest_size=16)
    for part in parts:
        h.update(repr(part).encode("ascii"))
        h.update(b"\x00")
    return h.digest()
