"""Limited-capacity many-to-many matching on the line in O(n^2) time.

Sweep the points left to right in global order. After a point, the state
is the signed number of open pair-ends crossing the gap to its right:
the S-degrees minus the T-degrees spent so far. An optimal matching pays
``width * |state|`` for every gap, and any degree vector with equal totals
on both sides is realized at exactly that cost by pairing S-slots and
T-slots in sorted order. So the optimum equals

    min over d_p in [1, Cap(p)] of  sum_gaps width_g * |open_g(d)|,

which is a shortest path over (point, open) states. The value over the
open count stays discretely convex from one point to the next, so taking
the best degree for every state costs O(1) after one argmin per point.
There is always an optimal matching whose edges form a forest, so the open
count after ``j`` points lies within a band of about ``n`` values, giving
O(n) work per point whatever the capacities are.

The prefix table ``C(q, k)`` (cheapest matching of the points up to ``q``
that is closed at ``q`` and uses at most ``k`` of ``q``'s capacity) falls
out of the same sweep.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (S_SIDE, UNREACHABLE, Infeasible, Instance, Matching,
                   global_order)

DEFAULT_MEM_LIMIT_MB = 2048


class MemoryLimitExceeded(MemoryError):
    pass


class InternalInconsistency(RuntimeError):
    """A back-pointer walk produced something that is not a valid matching."""


def memory_limit_mb() -> float:
    raw = os.environ.get("CAPMATCH_MEM_LIMIT_MB")
    return float(raw) if raw else DEFAULT_MEM_LIMIT_MB


@dataclass
class CapCostTable:
    """``C(q, k)`` for every point in global order and ``1 <= k <= Cap(q)``.

    Entry ``k`` of point ``q`` is reachable only for ``k >= first[q]``;
    ``choice[q][k-1]`` is the degree of ``q`` in the witnessing matching.
    """

    order: list[tuple[str, int]]
    caps: list[int]
    values: list[np.ndarray]
    choice: list[np.ndarray]
    first: list[int]

    def __call__(self, q: int, k: int):
        if not 1 <= k <= self.caps[q]:
            raise IndexError(f"capacity {k} out of range 1..{self.caps[q]}")
        if k < self.first[q]:
            return UNREACHABLE
        return int(self.values[q][k - 1])

    def position(self, side: str, idx: int) -> int:
        return self.order.index((side, idx))

    def row(self, q: int) -> list:
        return [self(q, k) for k in range(1, self.caps[q] + 1)]


@dataclass
class BackPointers:
    """Per point: leftmost argmin of the incoming layer and its support."""

    sign: np.ndarray
    cap: np.ndarray
    pstar: np.ndarray
    lo: np.ndarray
    hi: np.ndarray


@dataclass
class CapDPResult:
    cost: int
    matching: Matching
    degrees_s: list[int]
    degrees_t: list[int]
    backptr: BackPointers
    table: CapCostTable | None = None


def _point_arrays(inst: Instance):
    order = global_order(inst)
    sign = np.array([1 if sd == S_SIDE else -1 for sd, _ in order], dtype=np.int64)
    cap = np.array([inst.cap(sd, i) for sd, i in order], dtype=np.int64)
    x = np.array([inst.coord(sd, i) for sd, i in order], dtype=np.int64)
    gap = np.zeros(len(order), dtype=np.int64)
    gap[:-1] = np.diff(x)
    return order, sign, cap, gap


def state_bounds(inst: Instance, sign: np.ndarray):
    """Admissible open counts after each point.

    Positive open counts are pairs from S-points on the left to T-points
    on the right; in a forest there are at most (#left S + #right T - 1).
    """
    ns, nt = len(inst.s), len(inst.t)
    s_done = np.cumsum(sign > 0)
    t_done = np.cumsum(sign < 0)
    s_rem, t_rem = ns - s_done, nt - t_done
    upper = np.where((s_done > 0) & (t_rem > 0), s_done + t_rem - 1, 0)
    lower = -np.where((t_done > 0) & (s_rem > 0), t_done + s_rem - 1, 0)
    return lower.astype(np.int64), upper.astype(np.int64)


def _pick(pstar: int, lo: int, hi: int, sgn: int, c: int, after: int) -> int:
    """Best predecessor of open count ``after`` on a convex layer.

    It is ``after - sgn * d`` for some ``1 <= d <= c`` inside ``[lo, hi]``,
    namely the admissible value closest to the layer's leftmost argmin.
    """
    if sgn > 0:
        a, b = max(after - c, lo), min(after - 1, hi)
    else:
        a, b = max(after + 1, lo), min(after + c, hi)
    return min(max(pstar, a), b)


@njit(cache=True)
def _sweep(sign, cap, gap, lower, upper, with_table, tab_off):
    n = sign.shape[0]
    off = n
    cur = np.zeros(2 * n + 1, dtype=np.int64)
    nxt = np.zeros(2 * n + 1, dtype=np.int64)
    pstar_a = np.empty(n, dtype=np.int64)
    lo_a = np.empty(n, dtype=np.int64)
    hi_a = np.empty(n, dtype=np.int64)
    size = tab_off[n] if with_table else 0
    tab_val = np.empty(size, dtype=np.int64)
    tab_arg = np.empty(size, dtype=np.int64)
    first = np.empty(n if with_table else 0, dtype=np.int64)

    lo = 0
    hi = 0
    for q in range(n):
        sg = sign[q]
        c = cap[q]
        best = lo
        bv = cur[lo + off]
        for p in range(lo + 1, hi + 1):
            if cur[p + off] < bv:
                bv = cur[p + off]
                best = p
        pstar_a[q] = best
        lo_a[q] = lo
        hi_a[q] = hi

        if with_table:
            # close the prefix at q: the incoming open count is -sg * d
            o = tab_off[q]
            run = np.iinfo(np.int64).max
            arg = 0
            f = c + 1
            for d in range(1, c + 1):
                prev = -sg * d
                if lo <= prev <= hi:
                    if f > c:
                        f = d
                    v = cur[prev + off]
                    if v < run:
                        run = v
                        arg = d
                tab_val[o + d - 1] = run
                tab_arg[o + d - 1] = arg
            first[q] = f

        nb = lower[q]
        nt = upper[q]
        if sg > 0:
            new_lo = max(lo + 1, nb)
            new_hi = min(hi + c, nt)
        else:
            new_lo = max(lo - c, nb)
            new_hi = min(hi - 1, nt)
        if new_lo > new_hi:
            return q, 0, pstar_a, lo_a, hi_a, tab_val, tab_arg, first

        w = gap[q]
        # the whole band is filled, reachable or not, so the work per
        # point is the band width
        for p in range(nb, nt + 1):
            if sg > 0:
                a = max(p - c, lo)
                b = min(p - 1, hi)
            else:
                a = max(p + 1, lo)
                b = min(p + c, hi)
            x = min(max(best, a), b)
            x = min(max(x, lo), hi)
            nxt[p + off] = cur[x + off] + w * abs(p)
        cur, nxt = nxt, cur
        lo = new_lo
        hi = new_hi

    if lo <= 0 <= hi:
        return -1, cur[off], pstar_a, lo_a, hi_a, tab_val, tab_arg, first
    return n, 0, pstar_a, lo_a, hi_a, tab_val, tab_arg, first


def solve_capacitated(inst: Instance, *, with_table: bool = False,
                      mem_limit_mb: float | None = None) -> CapDPResult:
    """Minimum-cost limited-capacity matching; raises :class:`Infeasible`.

    ``with_table=True`` also fills the prefix table ``C(q, k)``. That needs
    memory proportional to the sum of clamped capacities and is checked
    against ``mem_limit_mb`` (default: ``CAPMATCH_MEM_LIMIT_MB`` or 2048).
    """
    order, sign, cap, gap = _point_arrays(inst)
    n = len(order)
    lower, upper = state_bounds(inst, sign)

    limit = memory_limit_mb() if mem_limit_mb is None else mem_limit_mb
    need = (int(cap.sum()) * 16 if with_table else 0) + n * 8 * 8
    if need / 2**20 > limit:
        raise MemoryLimitExceeded(f"needs about {need / 2**20:.0f} MB, limit {limit:.0f} MB")

    tab_off = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(cap, out=tab_off[1:])
    status, cost, pstar, lo, hi, tab_val, tab_arg, first = _sweep(
        sign, cap, gap, lower, upper, with_table, tab_off)
    if status == n:
        raise Infeasible("no matching closes at the last point")
    if status >= 0:
        raise Infeasible(f"no valid degree choice reaches sweep point {status}")
    cost = int(cost)

    bp = BackPointers(sign, cap, pstar, lo, hi)
    table = None
    if with_table:
        table = CapCostTable(order, cap.tolist(),
                             [tab_val[tab_off[q]:tab_off[q + 1]] for q in range(n)],
                             [tab_arg[tab_off[q]:tab_off[q + 1]] for q in range(n)],
                             first.tolist())
        if table(n - 1, int(cap[-1])) != cost:
            raise InternalInconsistency("table answer disagrees with the sweep")

    matching = _couple(inst, order, _walk_back(bp, n - 1, 0))
    if matching.cost != cost:
        raise InternalInconsistency(f"rebuilt matching costs {matching.cost}, DP says {cost}")
    deg_s = [0] * len(inst.s)
    deg_t = [0] * len(inst.t)
    for i, j in matching.pairs:
        deg_s[i] += 1
        deg_t[j] += 1
    return CapDPResult(cost, matching, deg_s, deg_t, bp, table)


def _walk_back(bp: BackPointers, q: int, after: int,
               first_degree: int | None = None) -> list[int]:
    """Degrees of sweep points ``0..q``, ending with open count ``after`` at q."""
    deg = [0] * (q + 1)
    for p in range(q, -1, -1):
        sgn, c = int(bp.sign[p]), int(bp.cap[p])
        if p == q and first_degree is not None:
            d = first_degree
            before = after - sgn * d
        else:
            before = _pick(int(bp.pstar[p]), int(bp.lo[p]), int(bp.hi[p]), sgn, c, after)
            d = sgn * (after - before)
        if not (1 <= d <= c and bp.lo[p] <= before <= bp.hi[p]):
            raise InternalInconsistency(f"back-pointer walk breaks at sweep point {p}")
        deg[p] = d
        after = before
    if after != 0:
        raise InternalInconsistency("back-pointer walk does not start from an empty state")
    return deg


def _couple(inst: Instance, order, deg) -> Matching:
    """Pair S-slots with T-slots in sweep order and drop repeats."""
    s_slots, t_slots = [], []
    for (sd, idx), d in zip(order, deg):
        (s_slots if sd == S_SIDE else t_slots).extend([idx] * d)
    if len(s_slots) != len(t_slots):
        raise InternalInconsistency("degree totals differ between the sides")
    pairs = set()
    for i, j in zip(s_slots, t_slots):
        if (i, j) in pairs and inst.s[i] != inst.t[j]:
            # only zero-length repeats can occur at an optimum
            raise InternalInconsistency(f"repeated pair {(i, j)} of positive length")
        pairs.add((i, j))
    return Matching.from_pairs(inst, pairs)


def reconstruct_capacitated(inst: Instance, result: CapDPResult, q: int | None = None,
                            k: int | None = None) -> Matching:
    """Witness for the whole instance, or for the table entry ``C(q, k)``.

    A table witness covers exactly the sweep points ``0..q``, with point
    ``q`` taking at most ``k`` partners.
    """
    order = global_order(inst)
    if q is None:
        return _couple(inst, order, _walk_back(result.backptr, len(order) - 1, 0))
    if result.table is None:
        raise ValueError("table entries need solve_capacitated(..., with_table=True)")
    if result.table(q, k) is UNREACHABLE:
        raise Infeasible(f"C({q}, {k}) is unreachable")
    d = int(result.table.choice[q][k - 1])
    deg = _walk_back(result.backptr, q, 0, first_degree=d)
    return _couple(inst, order[: q + 1], deg)
