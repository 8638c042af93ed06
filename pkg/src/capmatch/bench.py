"""Timing harness: median wall time per (n, k, algorithm)."""

from __future__ import annotations

import csv
import statistics
import time
from typing import Iterable

from .baseline import solve_unlimited
from .capdp import solve_capacitated
from .generate import bench_instance
from .oracle import solve_flow

SOLVERS = {
    "capdp": lambda inst: solve_capacitated(inst).cost,
    "baseline": lambda inst: solve_unlimited(inst.unlimited())[0],
    "oracle": lambda inst: solve_flow(inst, limit=10**9)[0],
}


def warm_up():
    """Compile the sweep kernel so the first timed run is not a JIT run."""
    solve_capacitated(bench_instance(16, 2, seed=0))


def median_ns(n: int, k: int, algo: str = "capdp", reps: int = 5, seed: int = 0,
              repeat: int = 3) -> int:
    """Median over ``reps`` instances of the family, each solved ``repeat`` times."""
    return interleaved_medians([(n, k)], algo, reps, seed, repeat)[n, k]


def interleaved_medians(points: Iterable[tuple[int, int]], algo: str = "capdp", reps: int = 5,
                        seed: int = 0, repeat: int = 3) -> dict[tuple[int, int], int]:
    """Median solve time per (n, k), taking the timings round-robin.

    A slow spell on a shared machine then lands on every row alike instead
    of inflating one of them, which keeps ratios between rows stable.
    """
    solve = SOLVERS[algo]
    points = list(points)
    insts = {p: [bench_instance(p[0], p[1], seed=seed + r) for r in range(reps)] for p in points}
    times: dict[tuple[int, int], list[int]] = {p: [] for p in points}
    for _ in range(repeat):
        for r in range(reps):
            for p in points:
                t0 = time.perf_counter_ns()
                solve(insts[p][r])
                times[p].append(time.perf_counter_ns() - t0)
    return {p: int(statistics.median(ts)) for p, ts in times.items()}


def size_rows(sizes: Iterable[int], k: int = 8, algos=("capdp",), reps: int = 5,
              seed: int = 0, repeat: int = 3) -> list[dict]:
    warm_up()
    sizes = list(sizes)
    rows = []
    for a in algos:
        med = interleaved_medians([(n, k) for n in sizes], a, reps, seed, repeat)
        rows += [{"n": n, "k": k, "algo": a, "median_ns": med[n, k]} for n in sizes]
    return rows


def k_sweep_rows(n: int = 5000, ks: Iterable[int] = (2, 8, 32, 64), algo: str = "capdp",
                 reps: int = 5, seed: int = 0, repeat: int = 3) -> list[dict]:
    warm_up()
    ks = list(ks)
    med = interleaved_medians([(n, k) for k in ks], algo, reps, seed, repeat)
    return [{"n": n, "k": k, "algo": algo, "median_ns": med[n, k]} for k in ks]


def write_csv(rows: list[dict], fh) -> None:
    w = csv.DictWriter(fh, fieldnames=["n", "k", "algo", "median_ns"], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
