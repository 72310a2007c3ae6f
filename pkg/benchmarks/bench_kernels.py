"""Compare the compiled and the pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times rank computations on random matrices over F_101, Hom-dimension
computations over the A3 registry, and an end-to-end A3 run in a
subprocess under each backend. Results from both backends are checked
for agreement before anything is timed.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from wakatilt import fixtures, linalg
from wakatilt.indec import enumerate_indecomposables

P = 101

END_TO_END = (
    "import time; t = time.perf_counter();"
    "from wakatilt import fixtures, tilting;"
    "from wakatilt.indec import enumerate_indecomposables;"
    "r = enumerate_indecomposables(fixtures.load('A3'));"
    "assert len(tilting.wakamatsu_tilting_all(r)) == 36;"
    "print(time.perf_counter() - t)"
)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_rank(kernels, repeat):
    rng = np.random.default_rng(0)
    rows = []
    for n in (20, 60, 150):
        m = rng.integers(0, P, size=(n, n + 7)).astype(np.int64)
        ranks = {name: k.rank(m.copy(), P) for name, k in kernels.items()}
        assert len(set(ranks.values())) == 1, ranks
        rows.append((f"rank {n}x{n + 7}", {name: best(lambda: k.rank(m.copy(), P), repeat) for name, k in kernels.items()}))
    return rows


def bench_hom(kernels, repeat):
    r = enumerate_indecomposables(fixtures.load("A3"))
    pairs = [(x, y) for x in r.modules[::3] for y in r.modules[::3]]

    def run(k):
        return [
            k.hom_dim(tuple(x.dims), tuple(y.dims), list(x.arrow_pairs()), list(x.mats), list(y.mats), P)
            for x, y in pairs
        ]

    results = {name: run(k) for name, k in kernels.items()}
    assert len({tuple(v) for v in results.values()}) == 1
    return [(f"hom_dim x{len(pairs)} (A3)", {name: best(lambda: run(k), repeat) for name, k in kernels.items()})]


def bench_end_to_end(repeat):
    out = {}
    for name, env in (("cython", {}), ("python", {"WAKATILT_PURE": "1"})):
        if name == "cython" and linalg.BACKEND != "cython":
            continue
        times = []
        for _ in range(repeat):
            res = subprocess.run(
                [sys.executable, "-c", END_TO_END],
                env={**os.environ, **env}, capture_output=True, text=True, check=True,
            )
            times.append(float(res.stdout.strip()))
        out[name] = min(times)
    return [("A3 registry + 36 wtilt", out)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    kernels = dict(linalg.KERNELS)
    print(f"loaded backend: {linalg.BACKEND}; comparing {', '.join(kernels)}")
    rows = bench_rank(kernels, args.repeat) + bench_hom(kernels, args.repeat) + bench_end_to_end(max(1, args.repeat // 2))
    names = ["cython", "python"]
    print(f"{'case':<28}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, t in rows:
        cells = "".join(f"{t[n] * 1e3:>10.2f}ms" if n in t else f"{'-':>12}" for n in names)
        speed = f"{t['python'] / t['cython']:>9.1f}x" if "cython" in t and "python" in t else f"{'-':>10}"
        print(f"{label:<28}{cells}{speed}")


if __name__ == "__main__":
    main()
