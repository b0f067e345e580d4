"""
Reproducible random streams.

Uniforms come from xoshiro256** (Blackman & Vigna) seeded through four splitmix64
outputs; the top 53 bits of each draw give u in [0, 1). Normals use the Box-Muller
transform on pairs (u1, u2):

    z0 = sqrt(-2 ln(1 - u1)) cos(2 pi u2)
    z1 = sqrt(-2 ln(1 - u1)) sin(2 pi u2)

z1 is kept as a spare for the next request, so a stream read in chunks equals the
stream read at once. The scalar math functions are used instead of vectorized
kernels to keep the output bit-identical across machines.
"""
import math
from typing import List, Optional

import numpy as np
import numpy.typing as npt

from ..error.invalid_input_error import InvalidInputError

MASK64 = 0xFFFFFFFFFFFFFFFF
TWO_PI = 2.0 * math.pi
INV_2_53 = 2.0 ** -53


def _splitmix64(x: int) -> tuple[int, int]:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class RngState:
    algorithm = "xoshiro256**"

    def __init__(self, seed: int):
        """
        :param seed: 64-bit unsigned seed
        """
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MASK64:
            raise InvalidInputError(f"RNG seed must be an unsigned 64-bit integer, got {seed!r}")
        self.seed = seed
        words = []
        x = seed
        for _ in range(4):
            x, out = _splitmix64(x)
            words.append(out)
        self.state: List[int] = words
        self._spare: Optional[float] = None

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.state
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.state = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1)"""
        return (self.next_u64() >> 11) * INV_2_53

    def gaussian_stream(self, count: int) -> npt.NDArray[np.float64]:
        """
        Draw count standard normals.

        Raises:
            InvalidInputError: If count < 1
        """
        if count < 1:
            raise InvalidInputError(f"count must be >= 1, got {count}")

        out = np.empty(count, dtype=np.float64)
        i = 0
        if self._spare is not None:
            out[0] = self._spare
            self._spare = None
            i = 1
        while i < count:
            u1 = 1.0 - self.uniform()
            u2 = self.uniform()
            radius = math.sqrt(-2.0 * math.log(u1))
            theta = TWO_PI * u2
            out[i] = radius * math.cos(theta)
            second = radius * math.sin(theta)
            if i + 1 < count:
                out[i + 1] = second
            else:
                self._spare = second
            i += 2
        return out


def gaussian_stream(rng: RngState, count: int) -> npt.NDArray[np.float64]:
    return rng.gaussian_stream(count)
