"""Benchmark the hot loops: compiled extension vs pure-Python fallback.

Run from the repository root after an in-place build:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py

Both backends execute identical arithmetic; the table reports wall
times and the speedup factor per kernel.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from holtorus import _kernels_py
from holtorus.kernels import available_backends

N_WALK = 1_000_000
N_PAIR = 200_000
N_SEARCH_REPS = 200


def bench_walk_traces(mod):
    rng = np.random.default_rng(0)
    props = rng.integers(0, 4, size=2 * N_WALK).astype(np.int8)
    xyz = np.empty((N_WALK, 3))
    kap = np.empty(N_WALK)
    lets = np.empty(N_WALK, dtype=np.int8)
    t0 = time.perf_counter()
    k, j = mod.walk_traces(1.0, 1.2, -1.3, props, 12.0, xyz, kap, lets, 0)
    dt = time.perf_counter() - t0
    assert k == N_WALK
    return dt, float(kap[-1])


def bench_walk_pairs(mod):
    # matrix pairs escape any guard within ~10^2 steps, so the honest
    # workload is many short replays rather than one long walk
    rng = np.random.default_rng(1)
    codes = rng.integers(0, 4, size=50).astype(np.int8)
    reps = N_PAIR // 50
    t0 = time.perf_counter()
    acc = 0.0
    for _ in range(reps):
        done, out = mod.walk_pairs(1.2, 0.3, 0.2, (1.0 + 0.06) / 1.2,
                                   0.8, -0.4, 0.5, (1.0 - 0.2) / 0.8,
                                   codes, 10, 1e12)
        acc += out[0]
    dt = time.perf_counter() - t0
    return dt, acc


def bench_search(mod):
    rng = np.random.default_rng(2)
    params = [(float(rng.uniform(3, 2000)), float(rng.uniform(-500, 500)),
               float(rng.uniform(1e-4, 3.0))) for _ in range(N_SEARCH_REPS)]
    t0 = time.perf_counter()
    total = 0
    for y, w, theta in params:
        n = mod.ellipticize_search(y, w, theta, 1_000_000)
        total += n if n > 0 else 0
    dt = time.perf_counter() - t0
    return dt, total


KERNELS = [
    (f"walk_traces ({N_WALK:,} steps)", bench_walk_traces),
    (f"walk_pairs ({N_PAIR:,} steps)", bench_walk_pairs),
    (f"ellipticize_search ({N_SEARCH_REPS} searches)", bench_search),
]


def main():
    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    print(f"{'kernel':<42} " + " ".join(f"{name:>12}" for name in backends)
          + f" {'speedup':>9}")
    for label, fn in KERNELS:
        times = {}
        checks = {}
        for name, mod in backends.items():
            times[name], checks[name] = fn(mod)
        if len(set(checks.values())) != 1:
            raise AssertionError(f"backends disagree on {label}: {checks}")
        row = f"{label:<42} " + " ".join(
            f"{times[name]:>11.3f}s" for name in backends)
        if "compiled" in times:
            row += f" {times['python'] / times['compiled']:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
