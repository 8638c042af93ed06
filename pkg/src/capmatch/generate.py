"""Seeded random instances."""

from __future__ import annotations

import numpy as np

from .core import Instance, feasible, validate_instance


def random_instance(seed, ns: int, nt: int, coord_max: int = 100, cap_max: int = 4,
                    feasible_only: bool = False, max_tries: int = 10_000) -> Instance:
    """Uniform coordinates in [0, coord_max] and capacities in [1, cap_max].

    ``seed`` may be an int or a ``numpy.random.Generator``. With
    ``feasible_only`` the draw is repeated until :func:`feasible` holds.
    """
    if ns < 1 or nt < 1:
        raise ValueError("sizes must be positive")
    if cap_max < 1:
        raise ValueError("cap_max must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_tries):
        s = rng.integers(0, coord_max, size=ns, endpoint=True)
        t = rng.integers(0, coord_max, size=nt, endpoint=True)
        alpha = rng.integers(1, cap_max, size=ns, endpoint=True)
        beta = rng.integers(1, cap_max, size=nt, endpoint=True)
        inst = validate_instance(s.tolist(), t.tolist(), alpha.tolist(), beta.tolist())
        if not feasible_only or feasible(inst):
            return inst
    raise RuntimeError(f"no feasible draw in {max_tries} tries")


def raw_instance(seed, ns: int, nt: int, coord_max: int = 100, cap_max: int = 4,
                 feasible_only: bool = False) -> dict:
    """Like :func:`random_instance` but in the caller's (unsorted) order."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    while True:
        data = {
            "s": rng.integers(0, coord_max, size=ns, endpoint=True).tolist(),
            "t": rng.integers(0, coord_max, size=nt, endpoint=True).tolist(),
            "alpha": rng.integers(1, cap_max, size=ns, endpoint=True).tolist(),
            "beta": rng.integers(1, cap_max, size=nt, endpoint=True).tolist(),
        }
        if not feasible_only or feasible(validate_instance(**data)):
            return data


def bench_instance(n: int, k: int, seed: int = 0) -> Instance:
    """Benchmark family: n points split evenly, coordinates in [0, 10n), caps in [1, k].

    Resampled until feasible, which at these sizes is almost never needed.
    """
    rng = np.random.default_rng([seed, n, k])
    ns = n // 2
    nt = n - ns
    while True:
        s = rng.integers(0, 10 * n, size=ns)
        t = rng.integers(0, 10 * n, size=nt)
        alpha = rng.integers(1, k, size=ns, endpoint=True)
        beta = rng.integers(1, k, size=nt, endpoint=True)
        inst = validate_instance(s, t, alpha, beta)
        if feasible(inst):
            return inst
