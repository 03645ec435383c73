"""Compare the compiled kernels with the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5]

Prints the best-of-``repeat`` time per call for each kernel and backend,
and the speed-up of the compiled one.
"""
import argparse
import timeit

import numpy as np

from turanlab import _kernels


def cases(rng):
    x = rng.uniform(0.01, 150.0, 100_000)
    z = rng.uniform(-30.0, 30.0, 2_000)
    phi = rng.normal(size=(65_536, 4))
    return {
        "lgamma_array (1e5 points)": lambda impl: impl.lgamma_array(x),
        "hyp1f1_series (2e3 points)": lambda impl: impl.hyp1f1_series(1.3, 0.4, z),
        "vandermonde_sq (65536 x 4)": lambda impl: impl.vandermonde_sq(phi),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    impls = {"python": _kernels.python_impl}
    if _kernels.compiled_impl is not None:
        impls["cython"] = _kernels.compiled_impl
    else:
        print("compiled kernels unavailable; timing the Python fallback only")
    print(f"{'kernel':30s}" + "".join(f"{k:>12s}" for k in impls) + "     speed-up")
    for name, fn in cases(np.random.default_rng(0)).items():
        times = {k: min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
                 for k, impl in impls.items()}
        row = f"{name:30s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"{times['python'] / times['cython']:12.1f}x"
        print(row)


if __name__ == "__main__":
    main()
