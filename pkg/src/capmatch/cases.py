"""Case-by-case prefix recurrences for the limited-capacity problem.

This is the block-pair formulation: for each adjacent pair ``(A_w, A_{w+1})``
the table entries ``C(b_i, k)`` are filled by one of Cases A.0-A.4 (the left
block can absorb ``b_1..b_i``) or Case B (it cannot, so the leftover points
walk back to earlier blocks), after a primary step that pushes surplus points
of ``A_w`` forward. :func:`solve_casewise` runs it end to end.

The exact solver is :func:`capmatch.capdp.solve_capacitated`; this module is
kept to document the recurrences and measure where they disagree with it.
Three of the recurrences as first written are wrong and are repaired by default;
:class:`Errata` switches each one back to its literal reading.

Indices inside case functions are 1-based, ``a_0`` is the last point of the
block before ``A_w``. Table rows are lists indexed by usable capacity ``k``
with slot 0 unused.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (UNREACHABLE, BlockOffsets, Infeasible, Instance,
                   partition_blocks)

U = UNREACHABLE


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class Errata:
    """Which literal forms to use instead of the repaired ones.

    literal_y: Y(b_i) sums e_j for j running down from s to s-i+1, read as
        an empty sum whenever i > 1.
    literal_count: the split inequality of S'_{i,j} counts sum(beta_l * f_l)
        rather than sum(beta_l).
    literal_case_b: Case B reuses C' for the capacity sum, overwriting the
        accumulated cost of earlier hops.
    """

    literal_y: bool = False
    literal_count: bool = False
    literal_case_b: bool = False


REPAIRED = Errata()


# ---------------------------------------------------------------------------
# one-sided greedy alignment

def _greatest(cond, lo: int, hi: int) -> int:
    """Largest k in [lo, hi] with cond(k); lo when none holds."""
    for k in range(hi, lo - 1, -1):
        if cond(k):
            return k
    return lo


def fill_from_right(alpha, t: int) -> tuple[int, int]:
    """Split of ``t`` far points over near points sorted toward them.

    ``alpha`` lists near capacities with the point closest to the far side
    last. Returns (k, m): the last k near points are saturated and the one
    before them takes m partners; the rest take one each.
    """
    s = len(alpha)

    def base(k):
        return s - k - 1 + sum(alpha[s - k:])

    k = _greatest(lambda k: base(k) < t, 0, s - 1)
    return k, t - base(k)


def fill_from_left(weights, i: int, s: int) -> tuple[int, int]:
    """Mirror split: ``s`` far points over ``i`` near points, nearest first.

    The first k near points are saturated, point k+1 takes m partners.
    ``weights`` are normally the capacities; the literal S' reading passes
    capacity times offset instead.
    """

    def base(k):
        return i - k - 1 + sum(weights[:k])

    k = _greatest(lambda k: base(k) < s, 0, i - 1)
    return k, s - base(k)


@dataclass(frozen=True)
class GreedyAlignment:
    k: int
    m: int
    cost: int
    pairs: tuple[tuple[int, int], ...]


def greedy_one_sided(a_coords, a_caps, b_coords, orientation: str | None = None) -> GreedyAlignment:
    """Cheapest assignment giving each B point one partner in A.

    All of A must lie on one side of all of B and ``s <= t <= sum(a_caps)``.
    The s points of B nearest to A are paired one to one, and the others go
    to the nearest A point with spare capacity. Pairs are (a index, b index),
    0-based.
    """
    s, t = len(a_coords), len(b_coords)
    if orientation is None:
        if max(a_coords) <= min(b_coords):
            orientation = "right"
        elif max(b_coords) <= min(a_coords):
            orientation = "left"
        else:
            raise PreconditionViolated("A and B overlap")
    if t > sum(a_caps) or t < s:
        raise PreconditionViolated(f"need s <= t <= sum(caps), got s={s}, t={t}")

    deg = [0] * s
    pairs = []
    if orientation == "right":
        for j in range(s):
            pairs.append((j, j))
            deg[j] = 1
        p = s - 1
        for j in range(s, t):
            while deg[p] == a_caps[p]:
                p -= 1
            pairs.append((p, j))
            deg[p] += 1
        k, m = fill_from_right(list(a_caps), t)
    else:
        for j in range(s):
            pairs.append((j, t - s + j))
            deg[j] = 1
        p = 0
        for j in range(t - s - 1, -1, -1):
            while deg[p] == a_caps[p]:
                p += 1
            pairs.append((p, j))
            deg[p] += 1
        k, m = fill_from_right(list(a_caps)[::-1], t)
    cost = sum(abs(a_coords[a] - b_coords[b]) for a, b in pairs)
    return GreedyAlignment(k, m, cost, tuple(sorted(pairs)))


# ---------------------------------------------------------------------------
# block pair views

@dataclass
class PairView:
    """A block pair with the table rows the recurrences read.

    ``prev[h]`` is the row of ``a_h`` for ``0 <= h <= s``. On the first
    pair the row of ``a_0`` stands for the empty prefix and holds 0.
    """

    off: BlockOffsets
    prev: list
    first: bool = False

    @property
    def s(self):
        return self.off.s

    def full(self, h: int):
        row = self.prev[h]
        return row[-1] if len(row) > 1 else U

    def reduced(self, h: int, d: int):
        c = self.off.alpha[h - 1] - d
        return self.prev[h][c] if c >= 1 else U

    def pred(self, h: int, d: int):
        """min(C(a_{h-1}, alpha_{h-1}), C(a_h, alpha_h - d))"""
        return min(self.full(h - 1), self.reduced(h, d))


def _row(beta_i: int, value=U) -> list:
    return [U] + [value] * beta_i


# ---------------------------------------------------------------------------
# main-step cases

def case_a0(off: BlockOffsets, i: int) -> list:
    """Row of ``b_i`` on the first block pair (needs ``i <= sum(alpha)``)."""
    s = off.s
    beta_i = off.beta[i - 1]
    total = off.sum_alpha(1, s)
    if i > total:
        raise PreconditionViolated(f"i={i} exceeds sum(alpha)={total}")
    if i == total:
        return _row(beta_i, off.sum_alpha_e(1, s) + off.sum_f(1, i))
    if s <= i:
        k, m = fill_from_right(list(off.alpha), i)
        val = (off.sum_alpha_e(s - k + 1, s) + m * off.e(s - k)
               + off.sum_e(1, s - k - 1) + off.sum_f(1, i))
        return _row(beta_i, val)
    have = off.sum_beta(1, i)
    if have < s:
        return _row(beta_i)
    if have == s:
        row = _row(beta_i)
        row[beta_i] = off.sum_e(1, s) + off.sum_beta_f(1, i)
        return row
    k, m = fill_from_left(list(off.beta[:i]), i, s)
    val = off.sum_e(1, s) + off.sum_beta_f(1, k) + m * off.f(k + 1) + off.sum_f(k + 2, i)
    row = _row(beta_i)
    if i == k:
        lo = beta_i
    elif i == k + 1:
        lo = m
    else:
        lo = 1
    for j in range(max(lo, 1), beta_i + 1):
        row[j] = val
    return row


def case_a1(e_s, c_prev_full, c_last_reduced):
    """``b_1`` pairs with ``a_s``; ``a_s`` may also keep left partners."""
    return e_s + min(c_prev_full, c_last_reduced)


def case_a2(sum_f, i: int, e_1, c_a0_full, c_a1_reduced):
    """All of ``b_1..b_i`` go to the single point ``a_1``."""
    return sum_f + i * e_1 + min(c_a0_full, c_a1_reduced)


def case_a3(view: PairView, k: int):
    """``C_k``: the suffix ``a_h..a_s`` (at most k points) attaches to ``b_1``."""
    s, off = view.s, view.off
    return min((off.sum_e(h, s) + view.pred(h, 1) for h in range(max(s - k + 1, 1), s + 1)),
               default=U)


@dataclass
class CapCaseWorkspace:
    """Scratch values of Case A.4, keyed by 1-based indices."""

    S: dict = field(default_factory=dict)     # h -> S'_h
    X: dict = field(default_factory=dict)     # (i, k) -> X(b_i, k)
    Y: dict = field(default_factory=dict)     # i -> Y(b_i)
    Z: dict = field(default_factory=dict)     # i -> Z(b_i)
    R: dict = field(default_factory=dict)     # (i, h) -> R_ih
    split: dict = field(default_factory=dict)  # (i, h) -> (k, m) of R
    C: dict = field(default_factory=dict)     # (i, k) -> C(b_i, k)


def s_prime(view: PairView, h: int):
    return view.off.sum_e(h, view.s) + view.pred(h, 1)


def s_prime_ij(view: PairView, h: int, i: int, cap_i: int, errata: Errata = REPAIRED):
    """S'_{h,i}: ``a_h..a_s`` onto ``b_1..b_i`` (more a's than b's), b_i capped at cap_i."""
    off, s = view.off, view.s
    n_a = s - h + 1
    caps = list(off.beta[: i - 1]) + [cap_i]
    if sum(caps) < n_a:
        return U
    weights = caps
    if errata.literal_count:
        weights = [b * off.f(l + 1) for l, b in enumerate(caps)]
    k, m = fill_from_left(weights, i, n_a)
    fill = sum(caps[l] * off.f(l + 1) for l in range(k))
    return s_prime(view, h) + fill + m * off.f(k + 1) + off.sum_f(k + 2, i)


def y_value(view: PairView, i: int, errata: Errata = REPAIRED):
    off, s = view.off, view.s
    if errata.literal_y:
        # a sum from j=s up to j=s-i+1 is empty once i > 1
        e_part = off.e(s) if i == 1 else 0
    else:
        e_part = off.sum_e(s - i + 1, s)
    return e_part + off.sum_f(1, i) + view.pred(s - i + 1, 1)


def r_value(view: PairView, i: int, h: int):
    """R_ih: ``a_h..a_s`` (fewer than i points) onto ``b_1..b_i``.

    Returns (value, k, m); ``a_h``'s right-hand degree decides which
    predecessor capacity is left for it.
    """
    off, s = view.off, view.s
    alpha = list(off.alpha[h - 1:])
    if i > sum(alpha):
        return U, None, None
    k, m = fill_from_right(alpha, i)
    R = (off.sum_alpha_e(s - k + 1, s) + m * off.e(s - k)
         + off.sum_e(h, s - k - 1) + off.sum_f(1, i))
    if h > s - k:
        d = off.alpha[h - 1]
    elif h == s - k:
        d = m
    else:
        d = 1
    return R + view.pred(h, d), k, m


def case_a4(view: PairView, errata: Errata = REPAIRED, rows=None) -> CapCaseWorkspace:
    """Case A.4 for every ``b_i`` with ``2 <= i <= min(t, sum(alpha))``.

    ``rows`` (optional) holds existing rows of ``A_{w+1}`` to take the
    minimum with.
    """
    off, s, t = view.off, view.s, view.off.t
    ws = CapCaseWorkspace()
    for h in range(1, s + 1):
        ws.S[h] = s_prime(view, h)
    total = off.sum_alpha(1, s)
    for i in range(2, min(t, total) + 1):
        if i <= s:
            ws.Y[i] = y_value(view, i, errata)
        for h in range(1, s + 1):
            ws.R[i, h], k, m = r_value(view, i, h)
            ws.split[i, h] = (k, m)
        ws.Z[i] = min((ws.R[i, h] for h in range(max(s - i + 2, 1), s + 1)), default=U)
        before = sum(off.beta[: i - 1])
        for k in range(1, off.beta[i - 1] + 1):
            # a_j is the first start whose suffix b_1..b_i can absorb
            j = next((j for j in range(1, s + 1) if before + k >= s - j + 1), s)
            if i < s:
                ws.X[i, k] = min((s_prime_ij(view, h, i, k, errata)
                                  for h in range(j, s - i + 1)), default=U)
            old = rows[i][k] if rows is not None else U
            if i < s - j + 1:
                val = min(ws.X.get((i, k), U), ws.Y.get(i, U), ws.Z[i], old)
            elif i == s - j + 1:
                val = min(ws.Y.get(i, U), ws.Z[i], old)
            else:
                val = min(min((ws.R[i, h] for h in range(j, s + 1)), default=U), old)
            ws.C[i, k] = val
    return ws


# ---------------------------------------------------------------------------
# forward and backward searches for capacity

@dataclass(frozen=True)
class _Pt:
    x: int
    cap: int
    pos: int


@dataclass
class SubproblemView:
    """Merged residual points met while hopping across blocks."""

    points: list
    hops: list = field(default_factory=list)  # (block index, hop cost)
    cost: object = 0
    target: int | None = None


class _Ctx:
    def __init__(self, inst: Instance, errata: Errata):
        self.inst = inst
        self.errata = errata
        self.part = partition_blocks(inst)
        self.blocks = []
        pos = 0
        for b in self.part:
            pts = [_Pt(x, inst.cap(b.side, m), pos + r) for r, (m, x) in enumerate(zip(b.members, b.coords))]
            self.blocks.append(pts)
            pos += len(b)
        self.table = [_row(p.cap) for blk in self.blocks for p in blk]

    def offsets(self, a_pts, b_pts) -> BlockOffsets:
        return BlockOffsets.between([p.x for p in a_pts], [p.x for p in b_pts],
                                    [p.cap for p in a_pts], [p.cap for p in b_pts])

    def view(self, w: int, b_pts=None) -> PairView:
        a_pts = self.blocks[w]
        b_pts = self.blocks[w + 1] if b_pts is None else b_pts
        if w == 0:
            prev0 = [U, 0]
        else:
            prev0 = self.table[self.blocks[w - 1][-1].pos]
        prev = [prev0] + [self.table[p.pos] for p in a_pts]
        return PairView(self.offsets(a_pts, b_pts), prev, first=(w == 0))

    def update(self, pos: int, k: int, value):
        if value < self.table[pos][k]:
            self.table[pos][k] = value


def _case_a_row(view: PairView, i: int, errata: Errata) -> list:
    """Row of ``b_i`` by Cases A.0-A.4 (requires ``i <= sum(alpha)``)."""
    off, s = view.off, view.s
    beta_i = off.beta[i - 1]
    if view.first:
        return case_a0(off, i)
    if i == 1:
        if s == 1 or beta_i == 1:
            return _row(beta_i, case_a1(off.e(s), view.full(s - 1), view.reduced(s, 1)))
        return [U] + [case_a3(view, k) for k in range(1, beta_i + 1)]
    if s == 1:
        return _row(beta_i, case_a2(off.sum_f(1, i), i, off.e(1), view.full(0), view.reduced(1, i)))
    ws = case_a4(view, errata)
    return [U] + [ws.C[i, k] for k in range(1, beta_i + 1)]


def primary_step(ctx: _Ctx, w: int) -> list[SubproblemView]:
    """Forward hops for suffixes of ``A_w`` that ``A_{w+1}`` cannot absorb.

    Updates the rows of the first later block able to take the leftovers
    and returns one trace per starting point tried.
    """
    blocks, nb = ctx.blocks, len(ctx.blocks)
    A, B = blocks[w], blocks[w + 1]
    s = len(A)
    cap_b = sum(p.cap for p in B)
    view = ctx.view(w)
    off = view.off
    traces = []
    for j in range(1, s + 1):
        if cap_b >= s - j + 1:
            break
        cost = off.sum_e(j, j + cap_b - 1) + off.sum_beta_f(1, off.t) + view.pred(j, 1)
        sub = SubproblemView(list(A[j + cap_b - 1:]), [(w + 1, cost)], cost)
        traces.append(sub)
        if cost is U:
            continue
        wn = w + 2
        while wn + 1 < nb:
            sub.points = sub.points + blocks[wn]
            target = blocks[wn + 1]
            cap_t = sum(p.cap for p in target)
            if cap_t >= len(sub.points):
                sub.target = wn + 1
                break
            hop = ctx.offsets(sub.points, target)
            step = hop.sum_e(1, cap_t) + hop.sum_beta_f(1, hop.t)
            sub.cost += step
            sub.hops.append((wn + 1, step))
            sub.points = sub.points[cap_t:]
            wn += 2
        if sub.target is None:
            continue
        target = blocks[sub.target]
        term = ctx.offsets(sub.points, target)
        for ii in range(1, min(len(target), term.sum_alpha(1, term.s)) + 1):
            row = case_a0(term, ii)
            for k in range(1, len(row)):
                ctx.update(target[ii - 1].pos, k, row[k] + sub.cost)
    return traces


def case_b(ctx: _Ctx, w: int, i: int) -> tuple[object, SubproblemView]:
    """Value shared by every ``C(b_i, k)`` when ``A_w`` lacks capacity."""
    blocks = ctx.blocks
    A, B = blocks[w], blocks[w + 1]
    cap_a = sum(p.cap for p in A)
    off = ctx.view(w).off
    cost = off.sum_alpha_e(1, off.s) + off.sum_f(i - cap_a + 1, i)
    sub = SubproblemView(list(B[: i - cap_a]), [(w, cost)], cost)
    wp = w - 1
    while True:
        sub.points = blocks[wp] + sub.points
        wa = wp - 1
        if wa < 0:
            return U, sub
        cap_w = sum(p.cap for p in blocks[wa])
        if ctx.errata.literal_case_b:
            sub.cost = cap_w
        if cap_w >= len(sub.points):
            sub.target = wa
            break
        hop = ctx.offsets(blocks[wa], sub.points)
        t2 = len(sub.points)
        step = hop.sum_alpha_e(1, hop.s) + hop.sum_f(t2 - cap_w + 1, t2)
        sub.cost += step
        sub.hops.append((wa, step))
        sub.points = sub.points[: t2 - cap_w]
        wp = wa - 1
    view = ctx.view(sub.target, sub.points)
    row = _case_a_row(view, len(sub.points), ctx.errata)
    return min(row[1:]) + sub.cost, sub


# ---------------------------------------------------------------------------
# driver

def casewise_table(inst: Instance, errata: Errata = REPAIRED) -> _Ctx:
    ctx = _Ctx(inst, errata)
    blocks = ctx.blocks
    for w in range(len(blocks) - 1):
        primary_step(ctx, w)
        view = ctx.view(w)
        total = sum(p.cap for p in blocks[w])
        for i, b in enumerate(blocks[w + 1], start=1):
            if i <= total:
                row = _case_a_row(view, i, errata)
                for k in range(1, b.cap + 1):
                    ctx.update(b.pos, k, row[k])
            elif w > 0:
                val, _ = case_b(ctx, w, i)
                for k in range(1, b.cap + 1):
                    ctx.update(b.pos, k, val)
            # a smaller usable capacity is also a valid larger one
            row = ctx.table[b.pos]
            for k in range(2, b.cap + 1):
                if row[k - 1] < row[k]:
                    row[k] = row[k - 1]
    return ctx


def solve_casewise(inst: Instance, errata: Errata = REPAIRED) -> int:
    """Optimal cost according to the case recurrences; raises Infeasible."""
    ctx = casewise_table(inst, errata)
    last = ctx.blocks[-1][-1]
    val = ctx.table[last.pos][last.cap]
    if val is U:
        raise Infeasible("the case recurrences leave the last entry unreachable")
    return val
