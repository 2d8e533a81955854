"""Transform semantics: conservation, locality, probability behaviour."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shufflelab.transforms import (
    DimensionError,
    FlattenedImage,
    Prng,
    TransformKind,
    TransformSpec,
    apply,
    color_flatten,
    grid_shuffle,
    local_grid_shuffle,
    randomized_shuffle,
    unflatten,
    within_grid_shuffle,
)

from conftest import indexed_image, random_image, smooth_image


def pixel_multiset(img: np.ndarray) -> np.ndarray:
    """Sorted array of packed pixel triples (exact multiset fingerprint)."""
    flat = img.reshape(-1, img.shape[-1]).astype(np.uint32)
    packed = flat[:, 0]
    for c in range(1, flat.shape[1]):
        packed = (packed << 8) | flat[:, c]
    return np.sort(packed)


def block_multiset(img: np.ndarray, b: int) -> list[bytes]:
    h, w = img.shape[:2]
    return sorted(
        img[y:y + b, x:x + b].tobytes() for y in range(0, h, b) for x in range(0, w, b)
    )


# Fisher-Yates hand traces for a 2x2 image, block 1, p=1 (all positions
# selected; swaps j=below(i+1) for i=3,2,1 on the documented stream):
#   seed 0:  js [3,1,0] -> [a,b,c,d] becomes [c,a,b,d]
#   seed 7:  js [0,1,0] -> [a,b,c,d] becomes [c,d,b,a]
#   seed 42: js [3,1,1] -> [a,b,c,d] becomes [a,c,b,d]
HAND_TRACES = {0: [2, 0, 1, 3], 7: [2, 3, 1, 0], 42: [0, 2, 1, 3]}


def _oracle_trace(seed: int) -> list[int]:
    """Independent re-derivation of the 4-element p=1 shuffle trace."""
    mult, mask, inc = 6364136223846793005, (1 << 64) - 1, (54 << 1) | 1

    def nxt(s):
        x = (((s >> 18) ^ s) >> 27) & 0xFFFFFFFF
        r = s >> 59
        return ((x >> r) | (x << ((-r) & 31))) & 0xFFFFFFFF, (s * mult + inc) & mask

    s = ((inc + seed) * mult + inc) & mask
    for _ in range(4):  # selection pass consumes one draw per position
        _, s = nxt(s)
    contents = [0, 1, 2, 3]
    for i in (3, 2, 1):
        thr = (1 << 32) % (i + 1)
        while True:
            v, s = nxt(s)
            if v >= thr:
                j = v % (i + 1)
                break
        contents[i], contents[j] = contents[j], contents[i]
    return contents


class TestGoldenTrace:
    @pytest.mark.parametrize("seed", sorted(HAND_TRACES))
    def test_oracle_agrees_with_frozen_trace(self, seed):
        assert _oracle_trace(seed) == HAND_TRACES[seed]

    @pytest.mark.parametrize("seed", sorted(HAND_TRACES))
    def test_grid_shuffle_block1_matches_trace(self, seed):
        img = np.arange(12, dtype=np.uint8).reshape(2, 2, 3)  # pixels a,b,c,d
        out = grid_shuffle(img, 1, 1.0, Prng(seed))
        expect = img.reshape(4, 3)[HAND_TRACES[seed]].reshape(2, 2, 3)
        assert (out == expect).all()


class TestIdentities:
    @pytest.mark.parametrize(
        "fn",
        [
            lambda img, rng: randomized_shuffle(img, 0.0, rng),
            lambda img, rng: grid_shuffle(img, 8, 0.0, rng),
            lambda img, rng: within_grid_shuffle(img, 8, 0.0, rng),
        ],
    )
    def test_p_zero_identity(self, fn):
        img = random_image(21)
        assert (fn(img, Prng(5)) == img).all()

    def test_local_single_block_p_zero_identity(self):
        img = random_image(22)
        out = local_grid_shuffle(img, 32, 0.0, Prng(5))
        assert (out == img).all()

    def test_baseline_apply_identity(self):
        img = random_image(23)
        spec = TransformSpec(TransformKind.BASELINE, seed=9)
        assert (apply(spec, img) == img).all()


class TestGridShuffle:
    def test_quadrants_are_permuted_block16(self):
        img = random_image(31)
        out = grid_shuffle(img, 16, 1.0, Prng(3))
        assert block_multiset(out, 16) == block_multiset(img, 16)

    def test_exactly_four_blocks_for_block16(self):
        img = random_image(32)
        assert len(block_multiset(img, 16)) == 4

    def test_block_interiors_verbatim(self):
        img = indexed_image()
        out = grid_shuffle(img, 8, 1.0, Prng(4))
        assert block_multiset(out, 8) == block_multiset(img, 8)

    def test_non_divisible_dimensions_error_names_values(self):
        with pytest.raises(DimensionError, match="5 does not divide.*32x32"):
            grid_shuffle(random_image(1), 5, 1.0, Prng(0))

    def test_pixel_multiset_conserved(self):
        img = random_image(33)
        out = grid_shuffle(img, 4, 0.5, Prng(8))
        assert (pixel_multiset(out) == pixel_multiset(img)).all()


class TestRandomizedShuffle:
    def test_p1_preserves_channel_multisets(self):
        img = random_image(41)
        out = randomized_shuffle(img, 1.0, Prng(6))
        for c in range(3):
            assert sorted(out[:, :, c].reshape(-1)) == sorted(img[:, :, c].reshape(-1))
        assert (pixel_multiset(out) == pixel_multiset(img)).all()

    def test_p1_fixed_point_fraction_small(self):
        # Uniform permutations of 1024 items leave ~1/1024 in place.
        img = indexed_image()
        flat = img.reshape(-1, 3)
        fractions = []
        for seed in range(100):
            out = randomized_shuffle(img, 1.0, Prng(seed)).reshape(-1, 3)
            fractions.append((out == flat).all(axis=1).mean())
        assert np.mean(fractions) < 0.02

    def test_p1_output_decorrelated_from_natural_input(self):
        img = smooth_image()
        base = img.reshape(-1).astype(float)
        corrs = []
        for seed in range(100):
            out = randomized_shuffle(img, 1.0, Prng(seed)).reshape(-1).astype(float)
            corrs.append(abs(np.corrcoef(base, out)[0, 1]))
        assert float(np.mean(corrs)) < 0.1

    def test_selected_fraction_concentrates(self):
        moved_or_kept = Prng(77).subset_permutation(10_000, 0.5)
        # count selected positions via a second pass with the same stream:
        # re-derive selection by checking which positions are eligible to move.
        rng = Prng(77)
        draws = rng.fill(10_000)
        selected = (draws < int(0.5 * 4294967296.0 + 0.5)).sum()
        assert abs(selected / 10_000 - 0.5) < 0.02
        assert sorted(moved_or_kept.tolist()) == list(range(10_000))

    def test_two_element_swap_frequency(self):
        swaps = 0
        n = 10_000
        for seed in range(n):
            src = Prng(seed).subset_permutation(2, 1.0)
            if src[0] == 1:
                swaps += 1
        assert abs(swaps / n - 0.5) < 0.02

    def test_three_element_permutations_uniform(self):
        counts: dict[tuple, int] = {}
        n = 60_000
        for seed in range(n):
            key = tuple(Prng(seed).subset_permutation(3, 1.0).tolist())
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 6
        for count in counts.values():
            assert abs(count / n - 1 / 6) < 0.02

    def test_disturbance_monotone_in_p(self):
        img = indexed_image()
        flat = img.reshape(-1, 3)
        means = []
        for p in (0.0, 0.25, 0.5, 0.75, 1.0):
            moved = []
            for seed in range(200):
                out = randomized_shuffle(img, p, Prng(seed)).reshape(-1, 3)
                moved.append((out != flat).any(axis=1).sum())
            means.append(np.mean(moved))
        assert all(a <= b + 1e-9 for a, b in zip(means, means[1:]))
        assert means[0] == 0


class TestWithinGridShuffle:
    @pytest.mark.parametrize("p", [0.3, 1.0])
    def test_per_block_multiset_preserved(self, p):
        img = random_image(51)
        out = within_grid_shuffle(img, 8, p, Prng(9))
        h, w = img.shape[:2]
        for y in range(0, h, 8):
            for x in range(0, w, 8):
                assert (
                    pixel_multiset(out[y:y + 8, x:x + 8])
                    == pixel_multiset(img[y:y + 8, x:x + 8])
                ).all()

    def test_pixels_never_cross_block_boundary(self):
        img = indexed_image()
        out = within_grid_shuffle(img, 4, 1.0, Prng(10))
        src_idx = (out[:, :, 0].astype(np.int64) << 8) | out[:, :, 1]
        dst_idx = np.arange(1024).reshape(32, 32)
        src_block = (src_idx // 32 // 4) * 8 + (src_idx % 32) // 4
        dst_block = (dst_idx // 32 // 4) * 8 + (dst_idx % 32) // 4
        assert (src_block == dst_block).all()

    def test_single_block_equals_randomized(self):
        img = random_image(52)
        a = within_grid_shuffle(img, 32, 0.7, Prng(123))
        b = randomized_shuffle(img, 0.7, Prng(123))
        assert (a == b).all()


class TestLocalGridShuffle:
    def test_composition_law(self):
        img = random_image(61)
        rng = Prng(31)
        staged = within_grid_shuffle(img, 8, 0.5, rng)
        expected = grid_shuffle(staged, 8, 1.0, rng)
        assert (local_grid_shuffle(img, 8, 0.5, Prng(31)) == expected).all()

    def test_global_multiset_preserved(self):
        img = random_image(62)
        out = local_grid_shuffle(img, 4, 1.0, Prng(13))
        assert (pixel_multiset(out) == pixel_multiset(img)).all()

    def test_blocks_fully_permuted_even_at_p0(self):
        # p applies to the pixel stage only; block positions always shuffle.
        img = random_image(63)
        out = local_grid_shuffle(img, 16, 0.0, Prng(14))
        assert block_multiset(out, 16) == block_multiset(img, 16)


class TestColorFlatten:
    def test_row_major_order(self):
        img = np.zeros((2, 2, 3), dtype=np.uint8)
        img[:, :, 0] = [[1, 2], [3, 4]]
        flat = color_flatten(img)
        assert flat.channels[0].tolist() == [1, 2, 3, 4]

    def test_vector_lengths(self):
        flat = color_flatten(random_image(71))
        assert all(vec.shape == (1024,) for vec in flat.channels)

    def test_unflatten_inverse(self):
        img = random_image(72)
        assert (unflatten(color_flatten(img)) == img).all()

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError, match="square"):
            color_flatten(np.zeros((2, 4, 3), dtype=np.uint8))

    def test_rejects_single_channel(self):
        with pytest.raises(DimensionError, match="channels"):
            color_flatten(np.zeros((4, 4, 1), dtype=np.uint8))

    def test_unflatten_rejects_bad_length(self):
        with pytest.raises(DimensionError):
            FlattenedImage(width=2, height=2, channels=tuple(np.zeros(3, dtype=np.uint8) for _ in range(3)))


class TestApply:
    def test_dispatch_matches_direct_call(self):
        img = random_image(81)
        spec = TransformSpec(TransformKind.GRID_SHUFFLE, block_size=8, probability=1.0, seed=42)
        assert (apply(spec, img) == grid_shuffle(img, 8, 1.0, Prng(42))).all()

    def test_deterministic(self):
        img = random_image(82)
        for spec in (
            TransformSpec(TransformKind.RANDOMIZED_SHUFFLE, probability=0.5, seed=3),
            TransformSpec(TransformKind.LOCAL_GRID_SHUFFLE, block_size=4, probability=1.0, seed=3),
        ):
            assert (apply(spec, img) == apply(spec, img)).all()

    def test_flatten_dispatch(self):
        out = apply(TransformSpec(TransformKind.COLOR_FLATTEN), random_image(83))
        assert isinstance(out, FlattenedImage)

    def test_baseline_returns_copy(self):
        img = random_image(84)
        out = apply(TransformSpec(TransformKind.BASELINE), img)
        out[0, 0, 0] ^= 0xFF
        assert (img == random_image(84)).all()


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 2**32),
    side_blocks=st.integers(1, 4),
    block=st.sampled_from([1, 2, 4]),
    p=st.floats(0.0, 1.0),
    kind=st.sampled_from(["randomized", "grid", "within", "local"]),
)
def test_conservation_property(seed, side_blocks, block, p, kind):
    side = side_blocks * block
    rng = np.random.default_rng(seed)
    img = rng.integers(0, 256, (side, side, 3), dtype=np.uint8)
    prng = Prng(seed)
    if kind == "randomized":
        out = randomized_shuffle(img, p, prng)
    elif kind == "grid":
        out = grid_shuffle(img, block, p, prng)
    elif kind == "within":
        out = within_grid_shuffle(img, block, p, prng)
    else:
        out = local_grid_shuffle(img, block, p, prng)
    assert (pixel_multiset(out) == pixel_multiset(img)).all()
