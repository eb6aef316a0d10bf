"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the Jacobi eigensolver on random Hermitian matrices and the hill
climber on the constraint sphere, checks that both backends agree, and
prints one line per (kernel, size, backend).
"""
import argparse
import time

import numpy as np

from qprlab import kernels
from qprlab.oracles import L1, project


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_jacobi(backends, repeat):
    gen = np.random.default_rng(0)
    for d in (3, 8, 16, 32):
        A = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
        H = (A + A.conj().T) / 2
        ref = np.linalg.eigvalsh(H)
        for name, mod in backends.items():
            t, (vals, _, sweeps) = _best(lambda: mod.jacobi_eigh(H, 1e-13, 100), repeat)
            err = np.max(np.abs(np.sort(vals) - ref))
            print(f"jacobi     d={d:<3d} {name:<9s} {t * 1e3:9.3f} ms  sweeps={sweeps}  max|dev|={err:.1e}")


def bench_hill_climb(backends, repeat):
    gen = np.random.default_rng(1)
    for d, restarts, steps in ((4, 50, 500), (6, 200, 500)):
        starts = project(gen.standard_normal((restarts, d)))
        noise = gen.standard_normal((restarts, steps, d))
        results = {}
        for name, mod in backends.items():
            t, (vals, _) = _best(lambda: mod.hill_climb(starts, noise, 0.3, 0.97, L1, True), repeat)
            results[name] = vals
            print(f"hill_climb d={d:<3d} {name:<9s} {t * 1e3:9.3f} ms  restarts={restarts} steps={steps}"
                  f"  best={vals.max():.12f}")
        if len(results) == 2:
            dev = np.max(np.abs(results["python"] - results["compiled"]))
            print(f"hill_climb d={d:<3d} backend agreement max|dev|={dev:.1e}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = kernels.backends()
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(backends)}")
    bench_jacobi(backends, args.repeat)
    bench_hill_climb(backends, args.repeat)


if __name__ == "__main__":
    main()
