"""Instances, block partitions, offsets, feasibility and matching checks.

Everything here is shared by the solvers. Points are addressed by their
index in the *sorted* instance: ``("S", i)`` is ``inst.s[i]`` and
``("T", j)`` is ``inst.t[j]``. Costs are exact Python integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

S_SIDE = "S"
T_SIDE = "T"

# Largest total distance any verified matching may accumulate.
INT64_MAX = 2**63 - 1


class _Unreachable:
    """Marker for a DP entry that no valid matching realizes.

    Adding anything to it gives it back, and it compares greater than
    every integer, so ``min`` skips it naturally.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNREACHABLE"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return id(self)

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


def is_reachable(value) -> bool:
    return value is not UNREACHABLE


class ValidationError(ValueError):
    """Raised when raw input cannot be turned into an :class:`Instance`."""


class EmptySide(ValidationError):
    pass


class CapacityBelowOne(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class CoordinateOverflow(ValidationError):
    pass


class Infeasible(Exception):
    """No matching satisfies every degree bound."""


@dataclass(frozen=True)
class Instance:
    """Two sorted point sets on the line with per-point capacities.

    ``alpha``/``beta`` keep the declared capacities. Solvers read the
    clamped values from :attr:`cap_s`/:attr:`cap_t`, since a point can
    never take more partners than the opposite set has points.
    ``s_order``/``t_order`` map a sorted position back to the caller's
    original index.
    """

    s: tuple[int, ...]
    t: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    s_order: tuple[int, ...] = field(default=(), compare=False, repr=False)
    t_order: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.s_order:
            object.__setattr__(self, "s_order", tuple(range(len(self.s))))
        if not self.t_order:
            object.__setattr__(self, "t_order", tuple(range(len(self.t))))

    @property
    def n(self) -> int:
        return len(self.s) + len(self.t)

    @property
    def cap_s(self) -> tuple[int, ...]:
        m = len(self.t)
        return tuple(min(a, m) for a in self.alpha)

    @property
    def cap_t(self) -> tuple[int, ...]:
        m = len(self.s)
        return tuple(min(b, m) for b in self.beta)

    def coord(self, side: str, idx: int) -> int:
        return self.s[idx] if side == S_SIDE else self.t[idx]

    def cap(self, side: str, idx: int) -> int:
        """Clamped capacity of one point."""
        if side == S_SIDE:
            return min(self.alpha[idx], len(self.t))
        return min(self.beta[idx], len(self.s))

    def with_capacities(self, alpha: Sequence[int], beta: Sequence[int]) -> "Instance":
        return validate_instance(self.s, self.t, alpha, beta)

    def unlimited(self) -> "Instance":
        """Same points, every capacity raised to ``n``."""
        return Instance(self.s, self.t, (self.n,) * len(self.s), (self.n,) * len(self.t),
                        self.s_order, self.t_order)

    def to_json(self) -> dict:
        return {"s": list(self.s), "t": list(self.t),
                "alpha": list(self.alpha), "beta": list(self.beta)}


def _as_int_list(values, name: str) -> list[int]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            # numpy integers are fine, floats are not
            try:
                import numpy as np
                if isinstance(v, np.integer):
                    out.append(int(v))
                    continue
            except ImportError:  # pragma: no cover
                pass
            raise ValidationError(f"{name} must contain integers, got {v!r}")
        out.append(v)
    return out


def validate_instance(s: Iterable[int], t: Iterable[int],
                      alpha: Iterable[int] | None = None,
                      beta: Iterable[int] | None = None) -> Instance:
    """Check raw lists and return a sorted :class:`Instance`.

    Coordinates are sorted stably and capacities are permuted alongside.
    Missing capacity lists mean "unlimited" (one per opposite point).
    """
    s = _as_int_list(s, "s")
    t = _as_int_list(t, "t")
    if not s or not t:
        raise EmptySide("both point sets must be non-empty")
    alpha = [len(t)] * len(s) if alpha is None else _as_int_list(alpha, "alpha")
    beta = [len(s)] * len(t) if beta is None else _as_int_list(beta, "beta")
    if len(alpha) != len(s):
        raise LengthMismatch(f"|alpha|={len(alpha)} but |s|={len(s)}")
    if len(beta) != len(t):
        raise LengthMismatch(f"|beta|={len(beta)} but |t|={len(t)}")
    if min(alpha) < 1 or min(beta) < 1:
        raise CapacityBelowOne("every capacity must be at least 1")

    lo = min(min(s), min(t))
    hi = max(max(s), max(t))
    if lo < -INT64_MAX or hi > INT64_MAX:
        raise CoordinateOverflow("coordinates must fit in 64 bits")
    # bound on any matching cost: every pair at most the span
    if (hi - lo) * len(s) * len(t) > INT64_MAX:
        raise CoordinateOverflow("coordinate span too large for exact 64-bit costs")

    s_order = sorted(range(len(s)), key=s.__getitem__)
    t_order = sorted(range(len(t)), key=t.__getitem__)
    return Instance(
        s=tuple(s[i] for i in s_order),
        t=tuple(t[j] for j in t_order),
        alpha=tuple(alpha[i] for i in s_order),
        beta=tuple(beta[j] for j in t_order),
        s_order=tuple(s_order),
        t_order=tuple(t_order),
    )


def instance_from_json(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise ValidationError("instance JSON must be an object")
    try:
        return validate_instance(data["s"], data["t"], data.get("alpha"), data.get("beta"))
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise ValidationError(str(exc)) from None


def load_instance(path) -> Instance:
    with open(path) as fh:
        return instance_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# global order and blocks

def global_order(inst: Instance) -> list[tuple[str, int]]:
    """Merge of S and T by coordinate; at equal coordinates S comes first."""
    out = []
    i = j = 0
    while i < len(inst.s) or j < len(inst.t):
        if j == len(inst.t) or (i < len(inst.s) and inst.s[i] <= inst.t[j]):
            out.append((S_SIDE, i))
            i += 1
        else:
            out.append((T_SIDE, j))
            j += 1
    return out


@dataclass(frozen=True)
class Block:
    side: str
    members: tuple[int, ...]
    coords: tuple[int, ...]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class BlockPartition:
    blocks: tuple[Block, ...]

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, w):
        return self.blocks[w]

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self) -> dict[tuple[str, int], int]:
        return {(b.side, m): w for w, b in enumerate(self.blocks) for m in b.members}


def partition_blocks(inst: Instance) -> BlockPartition:
    blocks: list[Block] = []
    side = None
    members: list[int] = []
    for sd, idx in global_order(inst):
        if sd != side and members:
            blocks.append(Block(side, tuple(members), tuple(inst.coord(side, m) for m in members)))
            members = []
        side = sd
        members.append(idx)
    blocks.append(Block(side, tuple(members), tuple(inst.coord(side, m) for m in members)))
    return BlockPartition(tuple(blocks))


@dataclass(frozen=True)
class BlockOffsets:
    """Distances for a block pair ``(A_w, A_{w+1})`` plus prefix sums.

    Accessors take 1-based indices to keep the recurrences readable:
    ``e(i) = |b_1 - a_i|`` and ``f(i) = |b_i - b_1|``.
    """

    e_vals: tuple[int, ...]
    f_vals: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    _pe: tuple[int, ...] = field(repr=False, default=())
    _pf: tuple[int, ...] = field(repr=False, default=())
    _pae: tuple[int, ...] = field(repr=False, default=())
    _pbf: tuple[int, ...] = field(repr=False, default=())
    _pa: tuple[int, ...] = field(repr=False, default=())
    _pb: tuple[int, ...] = field(repr=False, default=())

    def __post_init__(self):
        def prefix(xs):
            acc, out = 0, [0]
            for x in xs:
                acc += x
                out.append(acc)
            return tuple(out)

        object.__setattr__(self, "_pe", prefix(self.e_vals))
        object.__setattr__(self, "_pf", prefix(self.f_vals))
        object.__setattr__(self, "_pae", prefix(a * e for a, e in zip(self.alpha, self.e_vals)))
        object.__setattr__(self, "_pbf", prefix(b * f for b, f in zip(self.beta, self.f_vals)))
        object.__setattr__(self, "_pa", prefix(self.alpha))
        object.__setattr__(self, "_pb", prefix(self.beta))

    @classmethod
    def between(cls, a_coords: Sequence[int], b_coords: Sequence[int],
                alpha: Sequence[int] = (), beta: Sequence[int] = ()) -> "BlockOffsets":
        """Offsets of ``a_coords`` (left block) against ``b_coords`` (right block)."""
        b1 = b_coords[0]
        alpha = tuple(alpha) or (1,) * len(a_coords)
        beta = tuple(beta) or (1,) * len(b_coords)
        return cls(tuple(abs(b1 - a) for a in a_coords),
                   tuple(abs(b - b1) for b in b_coords), alpha, beta)

    @property
    def s(self) -> int:
        return len(self.e_vals)

    @property
    def t(self) -> int:
        return len(self.f_vals)

    def e(self, i: int) -> int:
        return self.e_vals[i - 1]

    def f(self, i: int) -> int:
        return self.f_vals[i - 1]

    def sum_e(self, i: int, j: int) -> int:
        """sum of e_i..e_j, zero when the range is empty"""
        i = max(i, 1)
        j = min(j, self.s)
        return self._pe[j] - self._pe[i - 1] if i <= j else 0

    def sum_f(self, i: int, j: int) -> int:
        i = max(i, 1)
        j = min(j, self.t)
        return self._pf[j] - self._pf[i - 1] if i <= j else 0

    def sum_alpha_e(self, i: int, j: int) -> int:
        i = max(i, 1)
        j = min(j, self.s)
        return self._pae[j] - self._pae[i - 1] if i <= j else 0

    def sum_beta_f(self, i: int, j: int) -> int:
        i = max(i, 1)
        j = min(j, self.t)
        return self._pbf[j] - self._pbf[i - 1] if i <= j else 0

    def sum_alpha(self, i: int, j: int) -> int:
        i = max(i, 1)
        j = min(j, self.s)
        return self._pa[j] - self._pa[i - 1] if i <= j else 0

    def sum_beta(self, i: int, j: int) -> int:
        i = max(i, 1)
        j = min(j, self.t)
        return self._pb[j] - self._pb[i - 1] if i <= j else 0


def block_offsets(inst: Instance, part: BlockPartition, w: int) -> BlockOffsets:
    """Offsets for the pair ``(A_w, A_{w+1})`` with clamped capacities."""
    a, b = part[w], part[w + 1]
    return BlockOffsets.between(a.coords, b.coords,
                                [inst.cap(a.side, m) for m in a.members],
                                [inst.cap(b.side, m) for m in b.members])


# ---------------------------------------------------------------------------
# feasibility and matchings

def feasible(inst: Instance) -> bool:
    return len(inst.s) <= sum(inst.beta) and len(inst.t) <= sum(inst.alpha)


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]
    cost: int

    @classmethod
    def from_pairs(cls, inst: Instance, pairs: Iterable[tuple[int, int]]) -> "Matching":
        pairs = tuple(sorted((int(i), int(j)) for i, j in pairs))
        return cls(pairs, pair_cost(inst, pairs))

    def to_json(self, inst: Instance | None = None) -> dict:
        """Pairs in the caller's original indexing when ``inst`` is given."""
        pairs = self.pairs
        if inst is not None:
            pairs = sorted((inst.s_order[i], inst.t_order[j]) for i, j in pairs)
        return {"cost": self.cost, "pairs": [list(p) for p in pairs]}


def pair_cost(inst: Instance, pairs: Iterable[tuple[int, int]]) -> int:
    return sum(abs(inst.s[i] - inst.t[j]) for i, j in pairs)


def matching_from_json(inst: Instance, data: dict) -> tuple[list[tuple[int, int]], int | None]:
    """Read ``{"cost", "pairs"}`` in original indexing; returns sorted-index pairs.

    Pairs are returned as a list so duplicates survive for verification.
    """
    if not isinstance(data, dict) or "pairs" not in data:
        raise ValidationError("matching JSON needs a 'pairs' array")
    s_pos = {orig: k for k, orig in enumerate(inst.s_order)}
    t_pos = {orig: k for k, orig in enumerate(inst.t_order)}
    pairs = []
    for p in data["pairs"]:
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise ValidationError(f"bad pair {p!r}")
        si, ti = _as_int_list(p, "pair")
        if si not in s_pos or ti not in t_pos:
            raise ValidationError(f"pair {p!r} refers to a missing point")
        pairs.append((s_pos[si], t_pos[ti]))
    cost = data.get("cost")
    return pairs, cost


@dataclass
class VerificationReport:
    ok: bool
    cost: int
    duplicates: list[tuple[int, int]]
    degree_violations: list[dict]
    out_of_range: list[tuple[int, int]]
    cost_mismatch: tuple[int, int] | None = None

    def messages(self) -> list[str]:
        out = [f"duplicate pair {p}" for p in self.duplicates]
        out += [f"pair {p} refers to a missing point" for p in self.out_of_range]
        for v in self.degree_violations:
            out.append(f"{v['side']}-point {v['index']} has degree {v['degree']}"
                       f" (allowed 1..{v['capacity']})")
        if self.cost_mismatch is not None:
            claimed, actual = self.cost_mismatch
            out.append(f"claimed cost {claimed} but pairs cost {actual}")
        return out

    def to_json(self) -> dict:
        return {"ok": self.ok, "cost": self.cost, "problems": self.messages()}


def verify_matching(inst: Instance, pairs, claimed_cost: int | None = None,
                    require_complete: bool = True) -> VerificationReport:
    """Check a pair list against degree bounds and recompute its cost.

    ``pairs`` may be a :class:`Matching` (its cost is then the claim) or
    any iterable of ``(s_index, t_index)``. Degree bounds use the
    declared capacities; ``require_complete=False`` skips the lower bound.
    """
    if isinstance(pairs, Matching):
        if claimed_cost is None:
            claimed_cost = pairs.cost
        pairs = pairs.pairs
    pairs = [tuple(p) for p in pairs]

    seen = set()
    dups, bad = [], []
    deg_s = [0] * len(inst.s)
    deg_t = [0] * len(inst.t)
    cost = 0
    for i, j in pairs:
        if not (0 <= i < len(inst.s) and 0 <= j < len(inst.t)):
            bad.append((i, j))
            continue
        if (i, j) in seen:
            dups.append((i, j))
        seen.add((i, j))
        deg_s[i] += 1
        deg_t[j] += 1
        cost += abs(inst.s[i] - inst.t[j])

    viol = []
    lo = 1 if require_complete else 0
    for side, degs, caps in ((S_SIDE, deg_s, inst.alpha), (T_SIDE, deg_t, inst.beta)):
        for k, (d, c) in enumerate(zip(degs, caps)):
            if d < lo or d > c:
                viol.append({"side": side, "index": k, "degree": d, "capacity": c})

    mismatch = None
    if claimed_cost is not None and claimed_cost != cost:
        mismatch = (claimed_cost, cost)
    ok = not (dups or bad or viol or mismatch)
    return VerificationReport(ok, cost, dups, viol, bad, mismatch)
