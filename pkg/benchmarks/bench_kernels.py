"""Compare the compiled kernel core against the pure-Python twin.

Usage: python benchmarks/bench_kernels.py [--images N]

Times the hot paths (select-and-shuffle pass, bilinear resize) and two
end-to-end transforms on CIFAR-sized images, per backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np


def load_backends():
    backends = {}
    from shufflelab._kernels import pure

    backends["pure"] = pure
    try:
        from shufflelab._kernels import _fast

        backends["compiled"] = _fast
    except ImportError:
        print("note: compiled backend not built; benchmarking pure only")
    return backends


def bench(fn, repeats: int) -> float:
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, (32, 32, 3), dtype=np.uint8)
    backends = load_backends()
    state0 = next(iter(backends.values())).pcg32_init(42)

    cases = {
        "pcg32_fill(4096)": lambda k: k.pcg32_fill(state0, 4096),
        "subset_permutation(1024, p=1)": lambda k: k.subset_permutation(state0, 1024, 1.0),
        "subset_permutation(1024, p=0.5)": lambda k: k.subset_permutation(state0, 1024, 0.5),
        "resize_bilinear 32->128": lambda k: k.resize_bilinear(img, 128, 128),
        "resize_bilinear 128->32": lambda k: k.resize_bilinear(
            np.tile(img, (4, 4, 1)), 32, 32
        ),
    }

    name_w = max(len(n) for n in cases)
    header = f"{'case':<{name_w}} " + "".join(f"{b:>14}" for b in backends)
    print(header)
    print("-" * len(header))
    rows = {}
    for case, make in cases.items():
        times = []
        for backend in backends.values():
            times.append(bench(lambda: make(backend), args.repeats))
        rows[case] = times
        cells = "".join(f"{t * 1e6:>11.1f} us" for t in times)
        print(f"{case:<{name_w}} {cells}")
    if len(backends) == 2:
        print("-" * len(header))
        speedups = [rows[c][0] / rows[c][1] for c in cases]
        print(f"compiled speedup: min {min(speedups):.1f}x, max {max(speedups):.1f}x")


if __name__ == "__main__":
    main()
