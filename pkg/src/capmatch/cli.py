"""Command-line front end: ``python -m capmatch <command>``.

Commands: solve, gen, verify, bench, partition. Only the machine-readable
payload goes to stdout; diagnostics go to stderr. Exit codes: 0 ok,
1 input error, 2 infeasible, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import bench
from .baseline import solve_unlimited
from .capdp import MemoryLimitExceeded, solve_capacitated
from .core import (Infeasible, ValidationError, feasible, instance_from_json,
                   matching_from_json, partition_blocks, verify_matching)
from .generate import raw_instance
from .oracle import FLOW_SIZE_LIMIT, solve_flow

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    algo: str = "capdp"
    input: str | None = None
    matching: str | None = None
    output: str | None = None
    seed: int = 0
    ns: int = 5
    nt: int = 5
    coord_max: int = 100
    cap_max: int = 4
    feasible_only: bool = False
    ignore_caps: bool = False
    optimal: bool = False
    sizes: list[int] = field(default_factory=lambda: [5000, 10000])
    k: int = 8
    k_sweep: list[int] | None = None
    n: int = 5000
    reps: int = 5
    mem_limit_mb: float | None = None


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="capmatch", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve an instance file")
    sp.add_argument("input")
    sp.add_argument("--algo", choices=["capdp", "baseline", "oracle"], default="capdp")
    sp.add_argument("--ignore-caps", action="store_true",
                    help="let the baseline solve capacity-limited instances as unlimited")
    sp.add_argument("--mem-limit-mb", type=float)
    sp.add_argument("-o", "--output")

    gp = sub.add_parser("gen", help="write a random instance")
    gp.add_argument("--ns", type=int, default=5)
    gp.add_argument("--nt", type=int, default=5)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--coord-max", type=int, default=100)
    gp.add_argument("--cap-max", type=int, default=4)
    gp.add_argument("--feasible-only", action="store_true")
    gp.add_argument("-o", "--output")

    vp = sub.add_parser("verify", help="check a matching against an instance")
    vp.add_argument("input")
    vp.add_argument("matching")
    vp.add_argument("--optimal", action="store_true", help="also compare with the oracle cost")

    bp = sub.add_parser("bench", help="time solvers, CSV on stdout")
    bp.add_argument("--sizes", type=_ints, default=[5000, 10000])
    bp.add_argument("--k", type=int, default=8)
    bp.add_argument("--k-sweep", type=_ints, help="fixed n, sweep these max capacities")
    bp.add_argument("--n", type=int, default=5000)
    bp.add_argument("--reps", type=int, default=5)
    bp.add_argument("--algo", choices=list(bench.SOLVERS), default="capdp")
    bp.add_argument("--seed", type=int, default=0)

    pp = sub.add_parser("partition", help="print the block partition")
    pp.add_argument("input")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _load(path: str, fill_unlimited: bool = False):
    data = _read_json(path)
    if fill_unlimited and isinstance(data, dict):
        n = len(data.get("s", [])) + len(data.get("t", []))
        data = dict(data)
        data.setdefault("alpha", [n] * len(data.get("s", [])))
        data.setdefault("beta", [n] * len(data.get("t", [])))
    try:
        return instance_from_json(data)
    except ValidationError as exc:
        raise InputError(f"invalid instance: {exc}") from None


def _emit(payload, output: str | None = None):
    text = json.dumps(payload)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_solve(cfg: RunConfig) -> int:
    inst = _load(cfg.input, fill_unlimited=(cfg.algo == "baseline"))
    try:
        if cfg.algo == "baseline":
            if not cfg.ignore_caps and min(inst.alpha + inst.beta) < inst.n:
                raise InputError("baseline needs every capacity >= n (or --ignore-caps)")
            cost, m = solve_unlimited(inst.unlimited())
        elif cfg.algo == "oracle":
            if inst.n > FLOW_SIZE_LIMIT:
                raise InputError(f"oracle is limited to {FLOW_SIZE_LIMIT} points")
            cost, m = solve_flow(inst)
        else:
            res = solve_capacitated(inst, mem_limit_mb=cfg.mem_limit_mb)
            cost, m = res.cost, res.matching
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        _emit({"cost": None, "pairs": [], "feasible": False}, cfg.output)
        return EXIT_INFEASIBLE
    except MemoryLimitExceeded as exc:
        raise InputError(str(exc)) from None
    out = m.to_json(inst)
    out["feasible"] = True
    _emit(out, cfg.output)
    return EXIT_OK


def cmd_gen(cfg: RunConfig) -> int:
    if cfg.ns < 1 or cfg.nt < 1 or cfg.cap_max < 1 or cfg.coord_max < 0:
        raise InputError("sizes and cap-max must be positive, coord-max non-negative")
    data = raw_instance(cfg.seed, cfg.ns, cfg.nt, cfg.coord_max, cfg.cap_max, cfg.feasible_only)
    _emit(data, cfg.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    inst = _load(cfg.input)
    try:
        pairs, claimed = matching_from_json(inst, _read_json(cfg.matching))
    except ValidationError as exc:
        raise InputError(f"invalid matching: {exc}") from None
    report = verify_matching(inst, pairs, claimed)
    payload = report.to_json()
    ok = report.ok
    if cfg.optimal:
        if inst.n > FLOW_SIZE_LIMIT:
            print("instance too large for the oracle, optimality not checked", file=sys.stderr)
        else:
            try:
                best, _ = solve_flow(inst)
            except Infeasible:
                best = None
            payload["optimal_cost"] = best
            if best is None or report.cost != best:
                ok = False
                payload["problems"].append(f"cost {report.cost} but the optimum is {best}")
    payload["ok"] = ok
    _emit(payload)
    if not ok:
        for msg in payload["problems"]:
            print(msg, file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(cfg: RunConfig) -> int:
    if cfg.k_sweep:
        rows = bench.k_sweep_rows(cfg.n, cfg.k_sweep, cfg.algo, cfg.reps, cfg.seed)
    else:
        rows = bench.size_rows(cfg.sizes, cfg.k, (cfg.algo,), cfg.reps, cfg.seed)
    bench.write_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_partition(cfg: RunConfig) -> int:
    inst = _load(cfg.input)
    orig = {"S": inst.s_order, "T": inst.t_order}
    blocks = [{"side": b.side, "members": [orig[b.side][m] for m in b.members],
               "coords": list(b.coords)} for b in partition_blocks(inst)]
    _emit({"blocks": blocks, "feasible": feasible(inst)})
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "gen": cmd_gen, "verify": cmd_verify,
            "bench": cmd_bench, "partition": cmd_partition}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
