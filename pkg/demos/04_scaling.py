"""Timing the exact sweep: quadratic in n, flat in the capacity bound."""

import numpy as np

from capmatch.bench import k_sweep_rows, size_rows

rows = size_rows([1000, 2000, 4000, 8000], k=8, reps=3)
n = np.array([r["n"] for r in rows])
ms = np.array([r["median_ns"] for r in rows]) / 1e6
for a, b in zip(n, ms):
    print(f"n={a:>5}  {b:8.1f} ms")

# doubling n should cost about 4x
print("ratios:", np.round(ms[1:] / ms[:-1], 2))
slope = np.polyfit(np.log(n), np.log(ms), 1)[0]
print(f"log-log slope {slope:.2f}")

# the capacity bound k barely matters
sweep = k_sweep_rows(4000, (2, 8, 32, 64), reps=3)
ks = np.array([r["median_ns"] for r in sweep]) / 1e6
print("k sweep ms:", np.round(ks, 1), "spread", round(ks.max() / ks.min(), 2))
