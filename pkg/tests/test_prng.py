"""Random stream: reference vector, determinism, uniformity."""

from __future__ import annotations

import numpy as np
import pytest
from scipy import stats as spstats

from shufflelab.transforms import Prng

# First six outputs of the reference generator for seed 42 on the package's
# fixed stream selector (54), as published for the algorithm's demo program.
REFERENCE_SEED_42 = [0xA15C02B7, 0x7B47F409, 0xBA1D3330, 0x83D2F293, 0xBFA4784B, 0xCBED606E]


def test_reference_vector_seed_42():
    rng = Prng(42)
    assert [rng.next_u32() for _ in range(6)] == REFERENCE_SEED_42


def test_same_seed_same_stream():
    a, b = Prng(987654321), Prng(987654321)
    assert [a.next_u32() for _ in range(200)] == [b.next_u32() for _ in range(200)]


def test_different_seeds_differ():
    a, b = Prng(1), Prng(2)
    assert [a.next_u32() for _ in range(8)] != [b.next_u32() for _ in range(8)]


def test_seed_is_64_bit():
    assert Prng((1 << 64) + 5).next_u32() == Prng(5).next_u32()


def test_fill_matches_next():
    a, b = Prng(77), Prng(77)
    filled = a.fill(50)
    assert list(filled) == [b.next_u32() for _ in range(50)]
    assert a.next_u32() == b.next_u32()  # streams stay aligned


def test_below_respects_bound():
    rng = Prng(3)
    draws = [rng.below(7) for _ in range(2000)]
    assert min(draws) == 0 and max(draws) == 6


def test_below_rejects_nonpositive_bound():
    with pytest.raises(ValueError):
        Prng(0).below(0)


def test_bounded_draws_uniform_chi_square():
    # 10 bins x 50,000 draws; fail only far out in the tail.
    rng = Prng(2024)
    counts = np.bincount([rng.below(10) for _ in range(50_000)], minlength=10)
    result = spstats.chisquare(counts)
    assert result.pvalue > 1e-3


def test_shuffle_is_uniform_over_small_permutations():
    # All 6 orders of 3 items should be equally common across seeds.
    freq: dict[tuple, int] = {}
    n = 12_000
    for seed in range(n):
        items = [0, 1, 2]
        Prng(seed).shuffle(items)
        freq[tuple(items)] = freq.get(tuple(items), 0) + 1
    assert len(freq) == 6
    for count in freq.values():
        assert abs(count / n - 1 / 6) < 0.02


def test_sample_distinct():
    rng = Prng(11)
    picked = rng.sample(30, 12)
    assert len(picked) == 12 and len(set(picked)) == 12
    assert all(0 <= v < 30 for v in picked)
    with pytest.raises(ValueError):
        rng.sample(3, 4)
