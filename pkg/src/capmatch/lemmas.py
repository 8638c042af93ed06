"""Structural properties every optimal matching on the line satisfies.

Each check scans a matching directly and returns the violations it finds
(an empty list means the property holds). They are exchange arguments:
a violation means a cheaper valid matching exists, so any violation on a
matching claimed optimal points to a solver bug.

"Saturated" uses the clamped capacity, the most partners a point can
actually take.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import S_SIDE, T_SIDE, Instance, Matching, global_order, partition_blocks


@dataclass(frozen=True)
class LemmaViolation:
    lemma: str
    detail: str


def _pairs(pairs) -> list[tuple[int, int]]:
    return list(pairs.pairs if isinstance(pairs, Matching) else pairs)


def _degrees(inst: Instance, pairs):
    ds, dt = [0] * len(inst.s), [0] * len(inst.t)
    for i, j in pairs:
        ds[i] += 1
        dt[j] += 1
    return {S_SIDE: ds, T_SIDE: dt}


def _size(inst, side) -> int:
    return len(inst.s) if side == S_SIDE else len(inst.t)


def _saturated(inst, deg, side, idx) -> bool:
    return deg[side][idx] >= inst.cap(side, idx)


def check_crossing_pairs(inst: Instance, pairs) -> list[LemmaViolation]:
    """A pair (a, d) spanning an opposite pair b < c needs b or c saturated.

    With a <= b < c <= d, b on d's side and c on a's side, an unsaturated
    b and c would let (a, d) be swapped for the shorter (a, b) and (c, d).
    Both orientations (a in S or a in T) are checked.
    """
    pairs = _pairs(pairs)
    deg = _degrees(inst, pairs)
    out = []
    for i, j in pairs:
        x_s, x_t = inst.s[i], inst.t[j]
        if x_s == x_t:
            continue
        if x_s < x_t:
            lo, hi, near, far = x_s, x_t, T_SIDE, S_SIDE
        else:
            lo, hi, near, far = x_t, x_s, S_SIDE, T_SIDE
        near_free = [b for b in range(_size(inst, near))
                     if lo <= inst.coord(near, b) < hi and not _saturated(inst, deg, near, b)]
        if not near_free:
            continue
        b_min = min(inst.coord(near, b) for b in near_free)
        for c in range(_size(inst, far)):
            xc = inst.coord(far, c)
            if b_min < xc <= hi and not _saturated(inst, deg, far, c):
                out.append(LemmaViolation(
                    "crossing", f"pair (s{i}, t{j}) spans unsaturated {near}@{b_min} and {far}{c}"))
                break
    return out


def check_through_point(inst: Instance, pairs) -> list[LemmaViolation]:
    """If b has partners on both sides, a <= b < c <= d, then c is saturated.

    Here b and c share a side and a, d are b's partners. Otherwise (b, d)
    could be traded for the shorter (c, d).
    """
    pairs = _pairs(pairs)
    deg = _degrees(inst, pairs)
    nbrs = {S_SIDE: [[] for _ in inst.s], T_SIDE: [[] for _ in inst.t]}
    for i, j in pairs:
        nbrs[S_SIDE][i].append(inst.t[j])
        nbrs[T_SIDE][j].append(inst.s[i])
    out = []
    for side in (S_SIDE, T_SIDE):
        for b, partners in enumerate(nbrs[side]):
            xb = inst.coord(side, b)
            if not any(p <= xb for p in partners):
                continue
            right = [p for p in partners if p > xb]
            if not right:
                continue
            d = max(right)
            for c in range(_size(inst, side)):
                xc = inst.coord(side, c)
                if xb < xc <= d and not _saturated(inst, deg, side, c):
                    out.append(LemmaViolation(
                        "through", f"{side}{b} matched both ways but {side}{c} is unsaturated"))
                    break
    return out


def check_adjacent_blocks(inst: Instance, pairs) -> list[LemmaViolation]:
    """Without capacity limits every pair joins two adjacent blocks."""
    part = partition_blocks(inst)
    where = part.block_of()
    out = []
    for i, j in _pairs(pairs):
        ws, wt = where[S_SIDE, i], where[T_SIDE, j]
        if abs(ws - wt) != 1:
            out.append(LemmaViolation("adjacent", f"pair (s{i}, t{j}) joins blocks {ws} and {wt}"))
    return out


def split_points(inst: Instance, pairs) -> list[int | None]:
    """Per block, the position (0-based, within the block) of a split point.

    Members before the split only have partners earlier in the sweep order,
    members after it only later ones; the split point itself may have both.
    ``None`` marks a block where no split exists.
    """
    order = global_order(inst)
    pos = {p: r for r, p in enumerate(order)}
    left = {p: False for p in order}
    right = {p: False for p in order}
    for i, j in _pairs(pairs):
        ps, pt = pos[S_SIDE, i], pos[T_SIDE, j]
        if ps < pt:
            right[S_SIDE, i] = left[T_SIDE, j] = True
        else:
            left[S_SIDE, i] = right[T_SIDE, j] = True
    out = []
    for blk in partition_blocks(inst):
        keys = [(blk.side, m) for m in blk.members]
        found = None
        for q in range(len(keys)):
            if all(not right[k] for k in keys[:q]) and all(not left[k] for k in keys[q + 1:]):
                found = q
                break
        out.append(found)
    return out


def check_split_points(inst: Instance, pairs) -> list[LemmaViolation]:
    return [LemmaViolation("split", f"block {w} has no split point")
            for w, q in enumerate(split_points(inst, pairs)) if q is None]


def check_all(inst: Instance, pairs, unlimited: bool = False) -> list[LemmaViolation]:
    out = check_crossing_pairs(inst, pairs) + check_through_point(inst, pairs)
    out += check_split_points(inst, pairs)
    if unlimited:
        out += check_adjacent_blocks(inst, pairs)
    return out
