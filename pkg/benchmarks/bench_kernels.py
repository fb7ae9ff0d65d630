"""Time the table kernels under both backends on the Cayley-Dickson bases.

    python benchmarks/bench_kernels.py --n 3 4 --repeat 5

The backend switch is the module flag ``kernels.USE_NUMBA``; the first
numba call per kernel includes compilation and is reported separately.
Outputs of the two backends are compared before any timing is printed.
"""

import argparse
import os
import time

import numpy as np

os.environ.setdefault("HOPF2_MAX_DIM", "64")

from hopf2 import cayley, kernels, twogroup  # noqa: E402


def _cases(Q):
    T, inv, rdiv = Q.table, Q.inv, Q.rdiv
    beta = kernels.associator_table(T, rdiv)
    X = twogroup.coherent_two_group_from_quasigroup(Q)
    return {
        "associator": lambda: kernels.associator_table(T, rdiv),
        "nucleus": lambda: kernels.nucleus_mask(T),
        "cocycle": lambda: kernels.cocycle_first_failure(T, inv, beta),
        "pentagon": lambda: twogroup.pentagon_witness(X),
        "naturality": lambda: twogroup.naturality_witness(X),
        "interchange": lambda: twogroup.interchange_witness(X),
    }


def _run(fn, use_numba):
    kernels.USE_NUMBA = use_numba
    return fn()


def _best(fn, use_numba, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        _run(fn, use_numba)
        times.append(time.perf_counter() - t0)
    return min(times)


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.numba is None:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'n':>2} {'kernel':<12} {'first s':>10} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.n:
        Q = cayley.build_Gn(cayley.cayley_dickson_cochain(n))
        for name, fn in _cases(Q).items():
            t0 = time.perf_counter()
            fast = _run(fn, True)
            compile_s = time.perf_counter() - t0
            slow = _run(fn, False)
            if not _same(fast, slow):
                raise SystemExit(f"backends disagree on {name} for n={n}")
            t_nb = _best(fn, True, args.repeat) * 1e3
            t_np = _best(fn, False, args.repeat) * 1e3
            print(f"{n:>2} {name:<12} {compile_s:>10.2f} {t_nb:>10.3f} {t_np:>10.3f} "
                  f"{t_np / max(t_nb, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
