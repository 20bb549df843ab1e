"""Time the numba and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--batch 2000] [--repeat 5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from bvbfv.lie import make_builtin
from bvbfv.orbit_numeric import ad_matrices, faithful_rep, get_kernels


def _best(fn, repeat: int) -> float:
    fn()  # warm-up (includes JIT compilation for numba)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    L = make_builtin("su2")
    rho, ad = faithful_rep(L), ad_matrices(L).astype(np.complex128)
    xs = rng.normal(size=(args.batch, 3))
    links = np.tensordot(xs, rho, axes=(1, 0))
    ads = np.tensordot(xs, ad, axes=(1, 0))
    t0 = np.array([0.0, 0.0, 1.0])
    cases = {
        "expm_batch": lambda K: K.expm_batch(links),
        "chain": lambda K: K.chain(links),
        "orbit_batch": lambda K: K.orbit_batch(ads, t0),
    }
    backends = [get_kernels("numpy"), get_kernels("numba")]
    ref = {name: fn(backends[0]) for name, fn in cases.items()}
    print(f"{'kernel':<12} {'numpy [ms]':>11} {'numba [ms]':>11} {'speedup':>8} {'max diff':>10}")
    for name, fn in cases.items():
        t_np = _best(lambda: fn(backends[0]), args.repeat)
        t_nb = _best(lambda: fn(backends[1]), args.repeat)
        diff = np.abs(np.asarray(fn(backends[1])) - np.asarray(ref[name])).max()
        print(f"{name:<12} {1e3 * t_np:>11.3f} {1e3 * t_nb:>11.3f} {t_np / t_nb:>8.2f} {diff:>10.2e}")


if __name__ == "__main__":
    main()
