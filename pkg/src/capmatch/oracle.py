"""Independent exact solvers used to certify the dynamic programs.

``solve_flow`` runs successive shortest paths on the usual
source -> S -> T -> sink network after removing the lower bounds of 1.
``brute_force_tiny`` enumerates pair subsets outright.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations

from .core import Infeasible, Instance, Matching

FLOW_SIZE_LIMIT = 500
BRUTE_FORCE_PAIR_LIMIT = 20


@dataclass
class FlowNetwork:
    """Residual graph in edge-list form; ``graph[u]`` lists edge ids."""

    num_nodes: int
    to: list[int] = field(default_factory=list)
    cap: list[int] = field(default_factory=list)
    cost: list[int] = field(default_factory=list)
    graph: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.graph:
            self.graph = [[] for _ in range(self.num_nodes)]

    def add_arc(self, u: int, v: int, cap: int, cost: int) -> int:
        eid = len(self.to)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.cost += [cost, -cost]
        self.graph[u].append(eid)
        self.graph[v].append(eid + 1)
        return eid

    def flow_on(self, eid: int) -> int:
        return self.cap[eid ^ 1]

    def min_cost_flow(self, src: int, dst: int, amount: int) -> tuple[int, int]:
        """Push up to ``amount`` units from src to dst; returns (flow, cost).

        All original arc costs must be non-negative, so zero potentials are
        valid to start Dijkstra with.
        """
        n = self.num_nodes
        pot = [0] * n
        flow = total = 0
        inf = float("inf")
        while flow < amount:
            dist = [inf] * n
            prev = [-1] * n
            dist[src] = 0
            heap = [(0, src)]
            while heap:
                d, u = heapq.heappop(heap)
                if d > dist[u]:
                    continue
                for eid in self.graph[u]:
                    if self.cap[eid] <= 0:
                        continue
                    v = self.to[eid]
                    nd = d + self.cost[eid] + pot[u] - pot[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        prev[v] = eid
                        heapq.heappush(heap, (nd, v))
            if dist[dst] == inf:
                break
            for v in range(n):
                if dist[v] < inf:
                    pot[v] += dist[v]
            push = amount - flow
            v = dst
            while v != src:
                eid = prev[v]
                push = min(push, self.cap[eid])
                v = self.to[eid ^ 1]
            v = dst
            while v != src:
                eid = prev[v]
                self.cap[eid] -= push
                self.cap[eid ^ 1] += push
                total += push * self.cost[eid]
                v = self.to[eid ^ 1]
            flow += push
        return flow, total


def solve_flow(inst: Instance, limit: int = FLOW_SIZE_LIMIT) -> tuple[int, Matching]:
    """Exact optimum by min-cost circulation with lower bounds.

    Raises :class:`Infeasible` when the degree lower bounds cannot be met.
    """
    if inst.n > limit:
        raise ValueError(f"instance has {inst.n} points, oracle limit is {limit}")
    ns, nt = len(inst.s), len(inst.t)
    source, sink = ns + nt, ns + nt + 1
    super_src, super_dst = ns + nt + 2, ns + nt + 3
    net = FlowNetwork(ns + nt + 4)

    # each lower bound l on (u, v) becomes l units of demand at u and supply at v
    pair_arcs = {}
    for i in range(ns):
        net.add_arc(source, i, inst.cap_s[i] - 1, 0)
        net.add_arc(super_src, i, 1, 0)
    for j in range(nt):
        net.add_arc(ns + j, sink, inst.cap_t[j] - 1, 0)
        net.add_arc(ns + j, super_dst, 1, 0)
    net.add_arc(super_src, sink, nt, 0)
    net.add_arc(source, super_dst, ns, 0)
    net.add_arc(sink, source, ns * nt, 0)
    for i in range(ns):
        for j in range(nt):
            pair_arcs[i, j] = net.add_arc(i, ns + j, 1, abs(inst.s[i] - inst.t[j]))

    need = ns + nt
    flow, cost = net.min_cost_flow(super_src, super_dst, need)
    if flow < need:
        raise Infeasible("degree lower bounds cannot be met")
    pairs = [p for p, eid in pair_arcs.items() if net.flow_on(eid)]
    m = Matching.from_pairs(inst, pairs)
    assert m.cost == cost
    return cost, m


def brute_force_tiny(inst: Instance,
                     limit: int = BRUTE_FORCE_PAIR_LIMIT) -> tuple[int, Matching]:
    """Exhaustive search over pair subsets.

    Each S-point picks a neighbour set of admissible size; the partial
    assignments are folded S-point by S-point, keeping for every T-degree
    profile the cheapest (then lexicographically smallest) pair set. Two
    partial assignments with the same profile extend identically, so this
    is the same minimum as listing all ``2**(|S||T|)`` subsets.
    """
    ns, nt = len(inst.s), len(inst.t)
    if ns * nt > limit:
        raise ValueError(f"|S||T| = {ns * nt} exceeds brute-force limit {limit}")
    cap_t = inst.cap_t

    # profile -> (cost, pairs)
    states: dict[tuple[int, ...], tuple[int, tuple]] = {(0,) * nt: (0, ())}
    for i in range(ns):
        choices = []
        for size in range(1, inst.cap_s[i] + 1):
            for nbrs in combinations(range(nt), size):
                c = sum(abs(inst.s[i] - inst.t[j]) for j in nbrs)
                choices.append((nbrs, c))
        nxt: dict[tuple[int, ...], tuple[int, tuple]] = {}
        for prof, (cost, pairs) in states.items():
            for nbrs, c in choices:
                new = list(prof)
                ok = True
                for j in nbrs:
                    new[j] += 1
                    if new[j] > cap_t[j]:
                        ok = False
                        break
                if not ok:
                    continue
                key = tuple(new)
                cand = (cost + c, pairs + tuple((i, j) for j in nbrs))
                old = nxt.get(key)
                if old is None or cand < old:
                    nxt[key] = cand
        states = nxt

    best = None
    for prof, cand in states.items():
        if min(prof) >= 1 and (best is None or cand < best):
            best = cand
    if best is None:
        raise Infeasible("no pair subset meets every degree bound")
    return best[0], Matching.from_pairs(inst, best[1])


def exists_matching(inst: Instance) -> bool:
    """Brute-force existence test, independent of :func:`feasible`."""
    try:
        brute_force_tiny(inst, limit=10**9)
    except Infeasible:
        return False
    return True


def brute_force_cover(inst: Instance) -> int:
    """Exhaustive minimum with capacities ignored (every degree just >= 1).

    Each point of the larger side picks any non-empty neighbour set on the
    smaller side; the search folds these choices over the set of smaller-side
    points covered so far, which is all the future depends on. Exponential
    in the smaller side only, so n <= 14 is instant.
    """
    pick, cover = (inst.s, inst.t) if len(inst.s) >= len(inst.t) else (inst.t, inst.s)
    nc = len(cover)
    if nc > 12:
        raise ValueError(f"smaller side has {nc} points, too many for the cover search")
    full = (1 << nc) - 1
    inf = float("inf")
    best = [inf] * (full + 1)
    best[0] = 0
    for x in pick:
        row = [0] * (full + 1)
        for mask in range(1, full + 1):
            low = mask & -mask
            row[mask] = row[mask ^ low] + abs(x - cover[low.bit_length() - 1])
        nxt = [inf] * (full + 1)
        for covered, c in enumerate(best):
            if c == inf:
                continue
            for mask in range(1, full + 1):
                v = c + row[mask]
                if v < nxt[covered | mask]:
                    nxt[covered | mask] = v
        best = nxt
    return int(best[full])
