"""Time the compiled kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is run on inputs shaped like the planner's hot loops: one
arm chain per cost evaluation, voting over a corpus-sized cloud, and the
hinge sum over 64 query distances.
"""
import argparse
import timeit

import numpy as np

from moto import _kernels_py

try:
    from moto import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases(rng):
    axes = np.ascontiguousarray([[0, 0, 1], [0, 1, 0], [0, 1, 0], [0, 1, 0]], dtype=float)
    lengths = np.array([0.05, 0.35, 0.30, 0.15])
    q = rng.uniform(-1, 1, 4)
    root = np.eye(4)
    cloud = rng.uniform(-2, 2, (20000, 3))
    voters = rng.uniform(-2, 2, (12, 3))
    d = rng.uniform(0, 0.2, 64)
    return {
        "chain_fk (4 joints)": ("chain_fk", (root, axes, lengths, q), 20000),
        "vote_counts (20k x 12)": ("vote_counts", (cloud, voters, 0.05), 20),
        "hinge_sum (64)": ("hinge_sum", (d, 0.05), 50000),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    backends = [("python", _kernels_py)]
    if _kernels_c is not None:
        backends.append(("cython", _kernels_c))
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':26s}" + "".join(f"{name:>14s}" for name, _ in backends) + ("     speedup" if len(backends) == 2 else ""))
    for label, (fn, argv_, number) in cases(rng).items():
        per_call = []
        results = []
        for _, mod in backends:
            f = getattr(mod, fn)
            results.append(f(*argv_))
            t = min(timeit.repeat(lambda: f(*argv_), number=number, repeat=args.repeat))
            per_call.append(t / number)
        if len(results) == 2:
            assert np.allclose(results[0], results[1], atol=1e-12), f"{fn}: backends disagree"
        row = f"{label:26s}" + "".join(f"{t * 1e6:11.2f} us" for t in per_call)
        if len(per_call) == 2:
            row += f"  {per_call[0] / per_call[1]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
