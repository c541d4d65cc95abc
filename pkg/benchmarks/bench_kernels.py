"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs once per available backend; results must agree, and the
table reports the best wall time and the speed-up.
"""

import argparse
import time

from paucity import kernels
from paucity.census import brute_census
from paucity.divsearch import divisor_guided_search, divisor_guided_search_nonlinear
from paucity.normalize import NonlinearSystem, SymmetricSystem, gen_theta_system


def workloads():
    product = SymmetricSystem(2, [[0, 1]])
    s23 = SymmetricSystem(3, [[0, 1, 0], [0, 0, 1]])
    gaussian = gen_theta_system((1, 0, 1), 4)
    nonlinear = NonlinearSystem(3, (2, 3), (1, 1), (((1, (2,)),), ()))
    return [
        ("brute product X=64", lambda b: brute_census(product, 64, backend=b, keep_solutions=False).row()),
        ("brute s23 X=24", lambda b: brute_census(s23, 24, backend=b, keep_solutions=False).row()),
        ("brute gaussian X=8", lambda b: brute_census(gaussian, 8, backend=b, keep_solutions=False).row()),
        ("divisor product X=30", lambda b: divisor_guided_search(product, 30, backend=b).pairs),
        ("divisor s23 X=10", lambda b: divisor_guided_search(s23, 10, backend=b).pairs),
        ("divisor gaussian X=4", lambda b: divisor_guided_search(gaussian, 4, backend=b).pairs),
        ("divisor nonlinear X=6", lambda b: divisor_guided_search_nonlinear(nonlinear, 6, backend=b).pairs),
    ]


def best_of(fn, backend, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available()
    print(f"backends: {', '.join(backends)}")
    header = f"{'workload':<24}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speed-up':>10}"
    print(header)
    for name, fn in workloads():
        times, results = [], []
        for b in backends:
            t, r = best_of(fn, b, args.repeat)
            times.append(t)
            results.append(r)
        if any(r != results[0] for r in results):
            raise SystemExit(f"{name}: backends disagree")
        line = f"{name:<24}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) > 1:
            line += f"{times[-1] / times[0]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
