import numpy as np
import pytest

from capmatch import feasible
from capmatch.bench import SOLVERS, k_sweep_rows, median_ns, size_rows
from capmatch.generate import bench_instance, random_instance, raw_instance


def test_random_instance_is_seeded():
    assert random_instance(3, 4, 5) == random_instance(3, 4, 5)
    rng = np.random.default_rng(0)
    assert random_instance(rng, 2, 2) != random_instance(rng, 2, 2)


def test_random_instance_ranges():
    inst = random_instance(1, 6, 6, coord_max=10, cap_max=3)
    assert all(0 <= x <= 10 for x in inst.s + inst.t)
    assert all(1 <= c <= 3 for c in inst.alpha + inst.beta)


def test_feasible_only():
    assert all(feasible(random_instance(s, 1, 4, cap_max=4, feasible_only=True)) for s in range(30))
    with pytest.raises(RuntimeError):
        random_instance(0, 1, 6, cap_max=4, feasible_only=True, max_tries=50)


def test_raw_instance_matches_sizes():
    data = raw_instance(5, 2, 3)
    assert len(data["s"]) == 2 and len(data["beta"]) == 3


def test_bench_family():
    inst = bench_instance(100, 8)
    assert inst.n == 100 and max(inst.alpha + inst.beta) <= 8
    assert feasible(inst) and inst == bench_instance(100, 8)


def test_bench_rows():
    rows = size_rows([40, 80], k=4, algos=("capdp", "baseline"), reps=1)
    assert [(r["n"], r["algo"]) for r in rows] == [
        (40, "capdp"), (80, "capdp"), (40, "baseline"), (80, "baseline")]
    assert all(r["median_ns"] > 0 for r in rows)
    assert [r["k"] for r in k_sweep_rows(40, (2, 4), reps=1)] == [2, 4]
    assert median_ns(30, 3, "oracle", reps=1) > 0
    assert set(SOLVERS) == {"capdp", "baseline", "oracle"}
