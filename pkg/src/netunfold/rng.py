"""Deterministic seed derivation for parallel-safe random streams.

Every ensemble member (and every windowed statistic) gets its own child seed
derived from the run seed with :func:`mix64`, so results do not depend on
evaluation order or thread count.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
# Golden-ratio increment used by splitmix64; any large odd constant with good
# avalanche behaviour would do, this one is the conventional choice.
_GOLDEN64 = 0x9E3779B97F4A7C15


def mix64(seed: int, index: int) -> int:
    """Derive child seed number `index` from a 64-bit parent seed.

    XORs the parent with index * golden-ratio-odd-constant, then applies the
    splitmix64 finalizer (xorshift-multiply avalanche). Pure integer math,
    identical on every platform.
    """
    z = (int(seed) ^ ((int(index) * _GOLDEN64) & _MASK64)) & _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for the given 64-bit seed (the package-wide RNG)."""
    return np.random.default_rng(int(seed) & _MASK64)
