"""Compare the compiled and pure-Python kernels on fixed workloads.

    python3 benchmarks/bench_kernels.py [--edges 6] [--repeat 3]
"""

import argparse
import random
import statistics
import sys
import time

from rgc import kernels, linalg
from rgc.complex import _std_iota, iso_classes
from rgc.linalg import PRIMES, _integer_columns, peel


def _workload(E):
    rng = random.Random(7)
    graphs = []
    for V in range(1, E + 2):
        for code in iso_classes(V, E):
            n = len(code)
            perm = list(range(n))
            rng.shuffle(perm)
            sigma, iota = [0] * n, [0] * n
            std = _std_iota(n)
            for h in range(n):
                sigma[perm[h]] = perm[code[h]]
                iota[perm[h]] = perm[std[h]]
            graphs.append((sigma, iota))
    return graphs


def _rank_columns(size, rng):
    cols = []
    for _ in range(size):
        cols.append({rng.randrange(size): rng.randint(-5, 5) or 1 for _ in range(4)})
    _, core = peel(_integer_columns(cols))
    return core


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--edges", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = {"python": kernels.python_backend}
    if kernels.compiled_backend is None:
        print("compiled backend not built; timing the pure-Python kernels only", file=sys.stderr)
    else:
        backends["cython"] = kernels.compiled_backend

    graphs = _workload(args.edges)
    cols = _rank_columns(900, random.Random(11))
    p = PRIMES[0]
    reduced = [{r: v % p for r, v in c.items() if v % p} for c in cols]

    tasks = {
        "canonical": lambda B: [B.canonical(s, i, 1) for s, i in graphs],
        "expand": lambda B: [B.expand(s, i, 1) for s, i in graphs],
        "rank_modp": lambda B: (B.rank_modp(reduced, p) if hasattr(B, "rank_modp")
                                else linalg._rank_modp_python(reduced, p)),
    }
    print(f"workload: {len(graphs)} graphs with E={args.edges}; rank core {len(cols)} columns")
    print(f"{'kernel':<10}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for task, fn in tasks.items():
        secs = {name: _time(lambda: fn(B), args.repeat) for name, B in backends.items()}
        row = f"{task:<10}" + "".join(f"{secs[n]:>11.3f}s" for n in backends)
        if "cython" in secs:
            row += f"{secs['python'] / secs['cython']:>9.1f}x"
        print(row)
    results = {name: [fn(B) for fn in tasks.values()] for name, B in backends.items()}
    if len(results) == 2 and results["python"] != results["cython"]:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
