"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each workload is timed with both backends and the results are checked to
agree before the speed-up is reported.
"""

import argparse
import json
import sys
import time

import numpy as np

from mcld import _kernels_py, kernels
from mcld.dimensions import family_psi_b, family_psi_bin, mld, psi_ld
from mcld.hypothesis import all_functions, amplify, make_threshold_pair_class, random_class
from mcld.rng import make_rng


def dimension_workload(seed, count, mode):
    rng = make_rng(seed)
    classes = [random_class(rng, max_domain=6, max_k=3, max_size=64) for _ in range(count)]

    def run(backend):
        out = []
        for H in classes:
            if mode == "mld":
                out.append(mld(H, backend=backend))
            elif mode == "psi_bin":
                out.append(psi_ld(H, family_psi_bin(H.k), backend=backend))
            else:
                out.append(psi_ld(H, family_psi_b(H.k), backend=backend))
        return out
    return run


def dense_workload():
    # classes whose recursions visit many row subsets
    classes = [all_functions(1, 6), all_functions(3, 3), amplify(make_threshold_pair_class(7), 2)]

    def run(backend):
        return [(mld(H, backend=backend), psi_ld(H, family_psi_bin(H.k), backend=backend))
                for H in classes]
    return run


def mwu_workload(seed, count, iters):
    rng = make_rng(seed)
    games = [np.ascontiguousarray(rng.integers(0, 2, size=(12, 10)).astype(np.float64))
             for _ in range(count)]

    def run(backend):
        impl = kernels._compiled.mwu_run if backend == "compiled" else _kernels_py.mwu_run
        out = []
        for A in games:
            m, n = A.shape
            gains, sum_d, q = np.zeros(n), np.zeros(n), np.zeros(m)
            impl(A, gains, sum_d, q, 0, iters)
            out.append(tuple(q.tolist()))
        return out
    return run


def best_time(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write results to this file")
    args = ap.parse_args(argv)
    if kernels._compiled is None:
        print("compiled extension not available; nothing to compare", file=sys.stderr)
        return 1
    workloads = {
        "mld (40 classes, up to 64 rows)": dimension_workload(1, 40, "mld"),
        "psi_bin (40 classes)": dimension_workload(2, 40, "psi_bin"),
        "psi_b bipartitions (20 classes)": dimension_workload(3, 20, "psi_b"),
        "dense: all 0/1 on 6 points, 4^3, tp7 x2": dense_workload(),
        "mwu 12x10 (20 games x 2000 rounds)": mwu_workload(4, 20, 2000),
    }
    rows = []
    print(f"{'workload':40s} {'python s':>10s} {'compiled s':>11s} {'speed-up':>9s}")
    for name, run in workloads.items():
        tp, rp = best_time(lambda: run("python"), args.repeat)
        tc, rc = best_time(lambda: run("compiled"), args.repeat)
        if rp != rc:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        rows.append({"workload": name, "python_s": tp, "compiled_s": tc, "speedup": tp / tc})
        print(f"{name:40s} {tp:10.4f} {tc:11.4f} {tp / tc:8.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
