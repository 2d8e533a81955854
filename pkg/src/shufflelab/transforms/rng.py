"""Deterministic random stream for the shuffling transforms.

The generator is PCG32 (XSH-RR output over a 64-bit LCG) on a fixed stream
selector, so a seed alone reproduces the sequence on any platform.  Bounded
draws use threshold rejection and are exactly uniform over ``[0, n)``.
"""

from __future__ import annotations

import numpy as np

from .. import _kernels

_MASK64 = (1 << 64) - 1


class Prng:
    """A seeded PCG32 stream; one instance owns one stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = _kernels.pcg32_init(int(seed) & _MASK64)

    def next_u32(self) -> int:
        value, self.state = _kernels.pcg32_next(self.state)
        return value

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``, rejection-sampled."""
        value, self.state = _kernels.pcg32_below(self.state, bound)
        return value

    def fill(self, count: int) -> np.ndarray:
        """The next ``count`` raw 32-bit draws."""
        values, self.state = _kernels.pcg32_fill(self.state, count)
        return values

    def subset_permutation(self, n: int, p: float) -> np.ndarray:
        """Source-index array for a Bernoulli(p) select-and-shuffle pass.

        Every position is selected independently with probability ``p`` in
        scan order; the selected positions' contents are then rearranged by
        a uniform Fisher-Yates permutation of the selected set (fixed
        points permitted).  Unselected positions map to themselves.
        """
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability must be in [0, 1], got {p}")
        src, self.state = _kernels.subset_permutation(self.state, n, p)
        return src

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle (uniform over permutations)."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, population: int, k: int) -> list[int]:
        """k distinct integers from ``range(population)``, order random."""
        if k > population:
            raise ValueError(f"cannot sample {k} from {population}")
        pool = list(range(population))
        for i in range(k):
            j = i + self.below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
