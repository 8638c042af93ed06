"""The prefix table C(q, k) and witnesses for single entries."""

import numpy as np

import capmatch as cm
from capmatch.core import global_order

inst = cm.validate_instance([1, 2, 6, 9], [0, 3, 7], [1, 2, 1, 2], [2, 2, 1])
res = cm.solve_capacitated(inst, with_table=True)
table = res.table
order = global_order(inst)

# one row per point in sweep order; entry k-1 holds C(q, k)
rows = [np.array([np.inf if v is cm.UNREACHABLE else v for v in table.row(q)])
        for q in range(len(order))]
for (side, idx), row in zip(order, rows):
    print(f"{side}{idx}@{inst.coord(side, idx):>2}", row)

# rows never increase: spare capacity at q can go unused
print("non-increasing in k:", all(np.all(r[:-1] >= r[1:]) for r in rows))

# the last point at full capacity is the answer
print("answer:", table(len(order) - 1, table.caps[-1]), "=", res.cost)

# any finite entry can be turned back into a matching of its prefix
q, k = 4, 1
m = cm.reconstruct_capacitated(inst, res, q, k)
print(f"C({q},{k}) = {table(q, k)} via", m.pairs)
