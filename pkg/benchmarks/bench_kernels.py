"""Compare the compiled and numpy influence-matrix kernels.

    python3 benchmarks/bench_kernels.py --generator ER:n=1000,p=0.01 --edge-prob 0.5

Reports the best of ``--repeat`` full influence-matrix evaluations per
backend and the largest absolute difference between the results.
"""
import argparse
import time

import numpy as np

from ismcentrality import GeneratorSpec, SpreadConfig, generate, influence_matrix
from ismcentrality._backend import KERNELS


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--generator", action="append",
                    help="generator spec, repeatable (default: ER, WS and BA with n=1000)")
    ap.add_argument("--seed", type=int, default=1729)
    ap.add_argument("--edge-prob", type=float, action="append", help="repeatable (default 0.1 and 0.9)")
    ap.add_argument("--lmax", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args(argv)
    specs = args.generator or ["ER:n=1000,p=0.01", "WS:n=1000,k=10,p=0.5", "BA:n=1000,m=5"]
    probs = args.edge_prob or [0.1, 0.9]
    backends = [b for b in ("cython", "python") if b in KERNELS]

    print(f"{'graph':<24}{'p':>5}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}{'max diff':>11}")
    for text in specs:
        g = generate(GeneratorSpec.parse(text, seed=args.seed))
        for p in probs:
            cfg = SpreadConfig(args.lmax, p)
            timings, results = {}, {}
            for b in backends:
                timings[b], m = best_time(lambda: influence_matrix(g, cfg, backend=b, threads=args.threads),
                                          args.repeat)
                results[b] = m.values
            diff = max(float(np.abs(results[b] - results[backends[0]]).max()) for b in backends)
            speed = timings["python"] / timings["cython"] if len(backends) == 2 else float("nan")
            print(f"{text:<24}{p:>5}" + "".join(f"{timings[b]:>11.3f}s" for b in backends)
                  + f"{speed:>9.1f}x{diff:>11.1e}")


if __name__ == "__main__":
    main()
