"""Compare the compiled and numpy Monte Carlo kernels.

    python3 benchmarks/bench_montecarlo.py --rounds 2000000 --repeat 3
"""
import argparse
import time

from qcomb.biqkd.montecarlo import EveConfig, available_backends, simulate_counts
from qcomb.networks import x_from_y


def best_time(config, rounds, seed, backend, repeat):
    times, tally = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        tally = simulate_counts(config, rounds, seed, backend=backend)
        times.append(time.perf_counter() - t0)
    return min(times), tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rounds", type=int, default=2_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--y", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    config = EveConfig(x_from_y(args.y))
    results = {}
    for backend in available_backends():
        secs, tally = best_time(config, args.rounds, args.seed, backend, args.repeat)
        results[backend] = tally
        print(f"{backend:>7}: {secs:.3f} s  ({args.rounds / secs / 1e6:.1f} M rounds/s)")
    if len(results) == 2:
        same = results["cython"] == results["python"]
        print(f"identical tallies: {same}")
        if not same:
            raise SystemExit(1)
    else:
        print("compiled kernel not built; only the numpy backend was timed")


if __name__ == "__main__":
    main()
