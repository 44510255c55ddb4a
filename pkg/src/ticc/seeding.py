"""Deterministic seed derivation.

Every random draw in the package comes from a numpy ``Generator`` backed by
PCG64, seeded with a 64-bit integer. Sub-seeds are derived from a master seed
and a tuple of purpose tags by hashing with BLAKE2b (8-byte digest), so any
single trial can be re-run in isolation::

    derive_seed(master, "code", trial)
    derive_seed(master, "erase", repr(epsilon), trial)
"""

import hashlib

import numpy as np

PRNG_NAME = "pcg64"
SEED_MASK = (1 << 64) - 1


def derive_seed(master, *tags):
    h = hashlib.blake2b(digest_size=8)
    h.update(int(master & SEED_MASK).to_bytes(8, "little"))
    for tag in tags:
        h.update(b"\x1f")
        h.update(str(tag).encode("utf-8"))
    return int.from_bytes(h.digest(), "little")


def make_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))
