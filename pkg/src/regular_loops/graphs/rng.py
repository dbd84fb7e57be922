"""
Reproducible random streams.

A stream is named by (seed, stream_index). The pair is folded into one 64-bit
word with the SplitMix64 finalizer:

    z = (seed + 0x9E3779B97F4A7C15 * (stream_index + 1)) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    z =  z ^ (z >> 31)

and z seeds numpy's PCG64 bit generator.
"""

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(seed: int, stream_index: int) -> int:
    z = (seed + GOLDEN_GAMMA * (stream_index + 1)) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "seed", int(self.seed) & MASK64)
        if self.stream_index < 0:
            raise ValueError(f"stream_index must be non-negative, got {self.stream_index}")

    @property
    def mixed_seed(self) -> int:
        return mix64(self.seed, self.stream_index)

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream"""
        return np.random.Generator(np.random.PCG64(self.mixed_seed))

    def substream(self, index: int) -> "RngStream":
        return RngStream(self.seed, index)


def cell_stream_index(cell_index: int, replicate_index: int) -> int:
    """Stream index of one sweep replicate: cell in the high 32 bits, replicate in the low 32"""
    return (cell_index << 32) | replicate_index
