"""Compare the compiled and pure-Python tree-pair kernels.

Usage: python benchmarks/bench_kernels.py [--pairs N] [--carets K] [--radius R]

Times ``product`` and ``reduce`` on the same random inputs for each backend,
then a full BFS ball (in a fresh interpreter per backend, so the selection at
import time applies to the whole library).
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from thompson_metric import _kernels_py
from thompson_metric._kernels_py import unparse

try:
    from thompson_metric import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def random_tree(rng: random.Random, p: int, carets: int) -> str:
    tree = ((),) * (p + 1)
    leaves = [(c,) for c in range(p + 1)]

    def put(t, path):
        if not path:
            return ((),) * (p + 1)
        i = path[0]
        return t[:i] + (put(t[i], path[1:]),) + t[i + 1:]

    for _ in range(carets - 1):
        path = leaves.pop(rng.randrange(len(leaves)))
        tree = put(tree, path)
        leaves.extend(path + (c,) for c in range(p + 1))
    return unparse(tree)


def time_kernel(mod, inputs, p: int) -> tuple[float, float]:
    t = time.perf_counter()
    for xn, xp, yn, yp in inputs:
        mod.product(p, xn, xp, yn, yp)
    t_prod = time.perf_counter() - t
    t = time.perf_counter()
    for xn, xp, _, _ in inputs:
        mod.reduce(p, xn, xp)
    return t_prod, time.perf_counter() - t


BFS_SNIPPET = (
    "import time; from thompson_metric import BACKEND; from thompson_metric.cayley import bfs_ball; "
    "t = time.perf_counter(); b = bfs_ball({p}, {r}, spot_check=0); "
    "print(BACKEND, len(b), round(time.perf_counter() - t, 2))"
)


def bfs_time(p: int, radius: int, pure: bool) -> str:
    env = dict(os.environ)
    env.pop("THOMPSON_METRIC_PURE", None)
    if pure:
        env["THOMPSON_METRIC_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", BFS_SNIPPET.format(p=p, r=radius)],
                         env=env, capture_output=True, text=True, check=True)
    backend, size, secs = out.stdout.split()
    return f"{backend:<7} ball p={p} r={radius}: {size} elements in {secs}s"


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=20000)
    ap.add_argument("--carets", type=int, default=12)
    ap.add_argument("--radius", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
    for p in (1, 2, 3):
        rng = random.Random(args.seed)
        inputs = [tuple(random_tree(rng, p, args.carets) for _ in range(4)) for _ in range(args.pairs)]
        base = None
        for name, mod in backends:
            tp, tr = time_kernel(mod, inputs, p)
            base = base or (tp, tr)
            print(f"p={p} {name:<7} product {tp:7.3f}s ({base[0] / tp:5.1f}x)  reduce {tr:7.3f}s ({base[1] / tr:5.1f}x)")
    if compiled is None:
        print("compiled kernels not available; only the pure-Python backend was timed")
    print(bfs_time(1, args.radius, pure=True))
    if compiled:
        print(bfs_time(1, args.radius, pure=False))


if __name__ == "__main__":
    main()
