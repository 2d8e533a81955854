"""Backend equivalence: the compiled core must match the pure twin bit-for-bit."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from shufflelab import _kernels
from shufflelab._kernels import pure

compiled = pytest.importorskip(
    "shufflelab._kernels._fast", reason="compiled kernels not built"
)


def test_init_and_stream_match():
    for seed in (0, 1, 42, 2**63, 2**64 - 1):
        assert compiled.pcg32_init(seed) == pure.pcg32_init(seed)
    state = pure.pcg32_init(907)
    a, sa = compiled.pcg32_fill(state, 4096)
    b, sb = pure.pcg32_fill(state, 4096)
    assert sa == sb and (a == b).all()


def test_bounded_draws_match():
    state = pure.pcg32_init(55)
    for bound in (1, 2, 3, 7, 1000, 2**31):
        va, sa = compiled.pcg32_below(state, bound)
        vb, sb = pure.pcg32_below(state, bound)
        assert (va, sa) == (vb, sb)
        state = sa


@pytest.mark.parametrize("n,p", [(1, 1.0), (16, 0.0), (64, 0.5), (1024, 1.0), (1024, 0.37)])
def test_subset_permutation_matches(n, p):
    state = pure.pcg32_init(1311)
    pa, sa = compiled.subset_permutation(state, n, p)
    pb, sb = pure.subset_permutation(state, n, p)
    assert sa == sb and (pa == pb).all()
    assert sorted(pa.tolist()) == list(range(n))  # is a permutation


@pytest.mark.parametrize(
    "in_shape,out_shape",
    [((32, 32), (128, 128)), ((32, 32), (32, 32)), ((17, 23), (64, 40)), ((64, 64), (16, 16))],
)
def test_resize_matches(in_shape, out_shape):
    rng = np.random.default_rng(9)
    img = rng.integers(0, 256, (*in_shape, 3), dtype=np.uint8)
    a = compiled.resize_bilinear(img, *out_shape)
    b = pure.resize_bilinear(img, *out_shape)
    assert a.shape == b.shape == (*out_shape, 3)
    assert (a == b).all()


def test_backend_env_forces_pure():
    code = (
        "from shufflelab import _kernels; print(_kernels.BACKEND)"
    )
    env = dict(os.environ, SHUFFLELAB_BACKEND="pure")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "pure"


def test_default_prefers_compiled():
    assert _kernels.BACKEND in ("compiled", "pure")
    assert "pure" in _kernels.available_backends()
