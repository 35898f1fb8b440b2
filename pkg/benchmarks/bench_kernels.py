"""Compare the compiled and numpy kernel backends.

Times the two kernels on sorted and unsorted queries, then a bootstrap run
end to end with each backend swapped in. Usage::

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from multicic import kernels
from multicic.estimators import EffectRequest
from multicic.inference import BootstrapConfig, bootstrap_many
from multicic.simulation import load_config, simulate


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(n, repeat):
    rng = np.random.default_rng(0)
    src, dst = np.sort(rng.normal(size=n)), np.sort(rng.normal(size=n // 2))
    q_sorted = np.sort(rng.normal(size=n))
    q_random = rng.normal(size=n)
    rows = []
    for name, mod in kernels.backends().items():
        rows.append((name, "rank_map sorted", best(lambda: mod.rank_map(q_sorted, src, dst), repeat)))
        rows.append((name, "rank_map unsorted", best(lambda: mod.rank_map(q_random, src, dst), repeat)))
        rows.append((name, "count_le sorted", best(lambda: mod.count_le(src, q_sorted), repeat)))
    return rows


def bootstrap_rows(config, n, B, repeat):
    ds = simulate(load_config(config), n, 1).dataset
    reqs = [EffectRequest("ATE", d="B"), EffectRequest("QTE", d="A", tau=0.5), EffectRequest("ACR", d="B")]
    cfg = BootstrapConfig(B=B, seed=0)
    rows, saved = [], kernels._impl
    try:
        for name, mod in kernels.backends().items():
            kernels._impl = mod
            rows.append((name, f"bootstrap B={B}, n={n}", best(lambda: bootstrap_many(ds, reqs, cfg), repeat)))
    finally:
        kernels._impl = saved
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--B", type=int, default=99)
    ap.add_argument("--config", default="configs/strong_3level.yaml")
    args = ap.parse_args()
    print(f"default backend: {kernels.BACKEND}")
    rows = kernel_rows(args.n, args.repeat) + bootstrap_rows(args.config, args.n // 10, args.B, max(1, args.repeat // 2))
    by_task = {}
    for backend, task, sec in rows:
        by_task.setdefault(task, {})[backend] = sec
    print(f"{'task':<32}{'cython (ms)':>14}{'numpy (ms)':>14}{'numpy/cython':>14}")
    for task, t in by_task.items():
        c, p = t.get("cython"), t["numpy"]
        ratio = f"{p / c:.2f}" if c else "n/a"
        print(f"{task:<32}{(c or float('nan')) * 1e3:>14.2f}{p * 1e3:>14.2f}{ratio:>14}")


if __name__ == "__main__":
    main()
