"""Time the dense game solver on both backends.

    python benchmarks/bench_solver.py [--alphabet 4] [--horizon 8] [--repeat 5]

Each backend is warmed up once (numba compiles on first call), then timed
on fresh random win sets.  Results are checked to agree.
"""

import argparse
import itertools
import random
import time

import numpy as np

from rankforge import _kernels
from rankforge.gamerank import OpenGame, win_levels


def random_game(rng, k, horizon, density):
    wins = []
    for n in range(2, horizon + 1, 2):
        # sample sparse win sets without listing k**n positions
        for _ in range(int(density * k ** n) or 1):
            wins.append(tuple(rng.randrange(k) for _ in range(n)))
    return OpenGame(k, horizon, frozenset(wins))


def run(backend, games):
    times = []
    out = None
    for g in games:
        start = time.perf_counter()
        out = _kernels.solve_levels(win_levels(g), g.alphabet, g.horizon, backend)
        times.append(time.perf_counter() - start)
    return times, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alphabet", type=int, default=4)
    ap.add_argument("--horizon", type=int, default=8)
    ap.add_argument("--density", type=float, default=0.001)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    games = [random_game(rng, args.alphabet, args.horizon, args.density) for _ in range(args.repeat)]
    backends = ["numpy"] + (["numba"] if _kernels.NUMBA_KERNELS is not None else [])

    results = {}
    for b in backends:
        run(b, games[:1])  # warm-up
        times, _ = run(b, games)
        results[b] = times
        print(f"{b:6s} median {np.median(times) * 1e3:9.2f} ms  min {min(times) * 1e3:9.2f} ms")

    if len(backends) == 2:
        for g in games:
            a = _kernels.solve_levels(win_levels(g), g.alphabet, g.horizon, "numpy")
            b = _kernels.solve_levels(win_levels(g), g.alphabet, g.horizon, "numba")
            for x, y in itertools.chain(zip(a[0], b[0]), zip(a[1], b[1])):
                assert (x is None and y is None) or np.array_equal(x, y)
        ratio = np.median(results["numpy"]) / np.median(results["numba"])
        print(f"numba speedup {ratio:.1f}x  (positions at the horizon: {args.alphabet ** args.horizon})")


if __name__ == "__main__":
    main()
