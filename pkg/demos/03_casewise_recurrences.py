"""The block-pair case recurrences next to the exact sweep.

The case route fills the same table block pair by block pair. It is kept
to study the recurrences: it agrees with the optimum almost always, and
three of its formulas need repairs to get there.
"""

import numpy as np

import capmatch as cm
from capmatch.cases import greedy_one_sided

# one-sided greedy: the near points pair up, the rest pile on the boundary
g = greedy_one_sided([0, 5], [2, 2], [10, 11, 12])
print("greedy:", g.pairs, "cost", g.cost, "saturated", g.k, "boundary load", g.m)

inst = cm.validate_instance([0, 1, 7, 8], [3, 4], [2, 1, 1, 2], [2, 2])
print("casewise:", cm.solve_casewise(inst), "exact:", cm.solve_capacitated(inst).cost)

# each literal form breaks on a small instance
cases = {
    "literal_y": ([3, 0, 3], [1, 1], [1, 1, 3], [2, 2]),
    "literal_count": ([4, 3, 4, 0], [0, 5, 6], [1, 2, 2, 3], [1, 3, 3]),
    "literal_case_b": ([6, 2, 4], [3, 0], [1, 1, 3], [1, 2]),
}
for flag, raw in cases.items():
    inst = cm.validate_instance(*raw)
    lit = cm.solve_casewise(inst, cm.Errata(**{flag: True}))
    print(f"{flag:15s} optimum {cm.solve_capacitated(inst).cost}, "
          f"repaired {cm.solve_casewise(inst)}, literal {lit}")

# how often does the repaired route miss on random instances?
rng = np.random.default_rng(1)
tally = {"equal": 0, "too high": 0, "false infeasible": 0}
for _ in range(2000):
    ns, nt = rng.integers(1, 7, size=2)
    if nt > 4 * ns or ns > 4 * nt:  # no draw of caps in 1..4 can work
        continue
    inst = cm.random_instance(rng, int(ns), int(nt), feasible_only=True)
    best = cm.solve_capacitated(inst).cost
    try:
        got = cm.solve_casewise(inst)
    except cm.Infeasible:
        tally["false infeasible"] += 1
        continue
    tally["equal" if got == best else "too high"] += 1
print(tally)
