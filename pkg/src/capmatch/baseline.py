"""Unlimited-capacity many-to-many matching on the line.

``C(q)`` is the cheapest matching of all points up to ``q``. Only the
points of the right block of each adjacent block pair get values; the
first block has none. Every value keeps a back-pointer so one optimal
matching can be rebuilt by walking back block by block.

Case functions take 1-based block indices, as in the recurrences:
``prev[h]`` is ``C(a_h)`` for ``0 <= h <= s`` where ``a_0`` is the last
point of the block before ``A_w`` (unreachable when there is none).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (UNREACHABLE, BlockOffsets, Instance, Matching,
                   partition_blocks)


def _min_arg(options):
    """(value, tag) with the smallest value; first listed wins ties."""
    best = None
    for val, tag in options:
        if best is None or val < best[0]:
            best = (val, tag)
    return best


def case0(off: BlockOffsets, i: int) -> int:
    """First block pair: A_0 has no predecessor."""
    s = off.s
    val = off.sum_e(1, s) + off.sum_f(1, i)
    if i > s:
        val += (i - s) * off.e(s)
    return val


def case1(off: BlockOffsets, c_a0, c_a1):
    return off.e(1) + min(c_a0, c_a1)


def case2(off: BlockOffsets, i: int, c_a0, c_a1):
    return off.sum_f(1, i) + i * off.e(1) + min(c_a0, c_a1)


def case3(off: BlockOffsets, prev: Sequence) -> tuple:
    """min over split i of (e_i + ... + e_s) + C(a_{i-1}); returns (value, i)."""
    s = off.s
    return _min_arg((off.sum_e(i, s) + prev[i - 1], i) for i in range(1, s + 1))


@dataclass
class CaseWorkspace:
    """Scratch values of one Case 4 block pair, lists indexed from 1."""

    S: list = field(default_factory=list)
    M: list = field(default_factory=list)
    M_arg: list = field(default_factory=list)
    X: list = field(default_factory=list)
    Y: list = field(default_factory=list)
    Z: list = field(default_factory=list)
    Z_from: list = field(default_factory=list)
    C: list = field(default_factory=list)
    choice: list = field(default_factory=list)


def case4(off: BlockOffsets, prev: Sequence) -> CaseWorkspace:
    """All ``C(b_i)`` of a pair with ``s > 1`` and ``t > 1`` in O(s + t)."""
    s, t = off.s, off.t
    U = UNREACHABLE
    ws = CaseWorkspace()
    ws.S = [U] + [off.sum_e(h, s) + prev[h - 1] for h in range(1, s + 1)]
    ws.M, ws.M_arg = [U], [0]
    for h in range(1, s + 1):
        if h == 1 or ws.S[h] < ws.M[h - 1]:
            ws.M.append(ws.S[h])
            ws.M_arg.append(h)
        else:
            ws.M.append(ws.M[h - 1])
            ws.M_arg.append(ws.M_arg[h - 1])

    ws.X = [U] * (t + 1)
    ws.Y = [U] * (t + 1)
    ws.Z = [U] * (t + 1)
    ws.Z_from = [None] * (t + 1)
    ws.C = [U] * (t + 1)
    ws.choice = [None] * (t + 1)
    for i in range(1, t + 1):
        F = off.sum_f(1, i)
        if i < s:
            ws.X[i] = ws.M[s - i] + F
        if i <= s:
            ws.Y[i] = off.sum_e(s - i + 1, s) + F + prev[s - i]
        if i > 1:
            src = "Y" if ws.Y[i - 1] <= ws.Z[i - 1] else "Z"
            ws.Z[i] = off.e(s) + off.f(i) + min(ws.Y[i - 1], ws.Z[i - 1])
            ws.Z_from[i] = src
        if i <= s:
            opts = [(ws.X[i], ("X", ws.M_arg[s - i]))] if i < s else []
            opts += [(ws.Y[i], ("Y",)), (ws.Z[i], ("Z",))]
            ws.C[i], ws.choice[i] = _min_arg(opts)
        else:
            ws.C[i] = ws.C[i - 1] + off.e(s) + off.f(i)
            ws.choice[i] = ("tail",)
    return ws


def z_direct(off: BlockOffsets, prev: Sequence, i: int):
    """Z(b_i) as the explicit minimum over splits, for cross-checking."""
    s = off.s
    return min((off.sum_e(j, s) + off.sum_f(1, i) + (i + j - s - 1) * off.e(s) + prev[j - 1]
                for j in range(max(s - i + 2, 1), s + 1)), default=UNREACHABLE)


@dataclass
class CostTable:
    """``C(q)`` per block (list per block, 1-based inside) with back-pointers."""

    values: list[list]
    choice: list[list]
    z_from: list[list]

    def __call__(self, w: int, i: int):
        return self.values[w][i]


def unlimited_table(inst: Instance) -> tuple[CostTable, object]:
    part = partition_blocks(inst)
    U = UNREACHABLE
    nb = len(part)
    values = [[U] * (len(b) + 1) for b in part]
    choice = [[None] * (len(b) + 1) for b in part]
    z_from = [[None] * (len(b) + 1) for b in part]

    for w in range(nb - 1):
        A, B = part[w], part[w + 1]
        off = BlockOffsets.between(A.coords, B.coords)
        s, t = len(A), len(B)
        a0 = values[w - 1][-1] if w > 0 else U
        prev = [a0] + values[w][1:]
        for i in range(1, t + 1):
            if w == 0:
                values[w + 1][i] = case0(off, i)
                choice[w + 1][i] = ("case0",)
        if w == 0:
            continue
        if s == 1 and t == 1:
            v, tag = _min_arg([(prev[0], 0), (prev[1], 1)])
            values[w + 1][1] = off.e(1) + v
            choice[w + 1][1] = ("case1", tag)
        elif s == 1:
            v, tag = _min_arg([(prev[0], 0), (prev[1], 1)])
            for i in range(1, t + 1):
                values[w + 1][i] = off.sum_f(1, i) + i * off.e(1) + v
                choice[w + 1][i] = ("case2", tag)
        elif t == 1:
            values[w + 1][1], h = case3(off, prev)
            choice[w + 1][1] = ("case3", h)
        else:
            ws = case4(off, prev)
            for i in range(1, t + 1):
                values[w + 1][i] = ws.C[i]
                choice[w + 1][i] = ws.choice[i]
                z_from[w + 1][i] = ws.Z_from[i]
    return CostTable(values, choice, z_from), part


def _rebuild(table: CostTable, part) -> list[tuple]:
    """Walk back from the last point; returns pairs of (block, pos) points."""
    pairs = []
    w1, i = len(part) - 1, len(part[-1])
    mode = None  # forced "Y"/"Z" while following a Z chain
    while True:
        w = w1 - 1
        s = len(part[w])
        tag = mode or table.choice[w1][i]
        kind = tag if isinstance(tag, str) else tag[0]
        mode = None
        pred = None  # 1-based index into A_w, 0 means a_0
        if kind == "case0":
            if i <= s:
                pairs += [((w, h), (w1, 1)) for h in range(1, s - i + 1)]
                pairs += [((w, s - i + j), (w1, j)) for j in range(1, i + 1)]
            else:
                pairs += [((w, j), (w1, j)) for j in range(1, s + 1)]
                pairs += [((w, s), (w1, j)) for j in range(s + 1, i + 1)]
            return pairs
        if kind in ("case1", "case2"):
            pairs += [((w, 1), (w1, j)) for j in range(1, i + 1)]
            pred = tag[1]
        elif kind == "case3":
            h = tag[1]
            pairs += [((w, j), (w1, 1)) for j in range(h, s + 1)]
            pred = h - 1
        elif kind == "X":
            h = tag[1]
            pairs += [((w, j), (w1, 1)) for j in range(h, s - i + 1)]
            pairs += [((w, s - i + j), (w1, j)) for j in range(1, i + 1)]
            pred = h - 1
        elif kind == "Y":
            pairs += [((w, s - i + j), (w1, j)) for j in range(1, i + 1)]
            pred = s - i
        elif kind == "Z":
            pairs.append(((w, s), (w1, i)))
            mode = table.z_from[w1][i]
            i -= 1
            continue
        elif kind == "tail":
            pairs.append(((w, s), (w1, i)))
            i -= 1
            continue
        else:  # pragma: no cover
            raise AssertionError(kind)

        if pred == 0:
            w1, i = w - 1, len(part[w - 1])
        else:
            w1, i = w, pred


def solve_unlimited(inst: Instance) -> tuple[int, Matching]:
    """Minimum-cost many-to-many matching ignoring capacities."""
    table, part = unlimited_table(inst)
    cost = table(len(part) - 1, len(part[-1]))
    raw = _rebuild(table, part)
    pairs = set()
    for (wa, ha), (wb, hb) in raw:
        pa = (part[wa].side, part[wa].members[ha - 1])
        pb = (part[wb].side, part[wb].members[hb - 1])
        si = pa[1] if pa[0] == "S" else pb[1]
        ti = pb[1] if pa[0] == "S" else pa[1]
        pairs.add((si, ti))
    m = Matching.from_pairs(inst, pairs)
    if m.cost != cost:
        raise RuntimeError(f"rebuilt matching costs {m.cost}, table says {cost}")
    return cost, m
