"""Match two small point sets on a line, then check the answer."""

import capmatch as cm

# two sets of points; alpha/beta cap how many partners each point may take
s = [0, 4, 5]
t = [2, 8, 9, 10, 11, 12, 13]
alpha = [5, 2, 3]
beta = [2, 3, 3, 1, 2, 3, 3]

inst = cm.validate_instance(s, t, alpha, beta)
print("feasible:", cm.feasible(inst))

# blocks are maximal runs of one colour in sweep order
for blk in cm.partition_blocks(inst):
    print(blk.side, list(blk.coords))

res = cm.solve_capacitated(inst)
print("cost:", res.cost)
for i, j in res.matching.pairs:
    print(f"  s{i}@{inst.s[i]} -- t{j}@{inst.t[j]}")
print("degrees S:", res.degrees_s, "caps", list(inst.cap_s))
print("degrees T:", res.degrees_t, "caps", list(inst.cap_t))

# s0 cannot serve every t alone, so one long pair reaches across
print("s0 pairs with t1:", (0, 1) in res.matching.pairs)

# an independent min-cost flow gives the same optimum
flow_cost, _ = cm.solve_flow(inst)
print("flow cost:", flow_cost)

report = cm.verify_matching(inst, res.matching)
print("valid:", report.ok, "recomputed cost:", report.cost)

# drop a pair and the report says which point is left uncovered
broken = res.matching.pairs[1:]
print(cm.verify_matching(inst, broken).messages())

# with no capacity limits the answer can only get cheaper
free = inst.unlimited()
print("unlimited:", cm.solve_unlimited(free)[0], "=", cm.solve_capacitated(free).cost)
