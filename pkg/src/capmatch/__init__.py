"""Minimum-cost many-to-many matching of two point sets on a line.

Every point must be matched at least once and at most its capacity
number of times; the cost is the total pair length.
"""

from .baseline import solve_unlimited
from .capdp import (CapDPResult, InternalInconsistency, MemoryLimitExceeded,
                    reconstruct_capacitated, solve_capacitated)
from .cases import Errata, greedy_one_sided, solve_casewise
from .core import (UNREACHABLE, Infeasible, Instance, Matching, ValidationError,
                   feasible, global_order, instance_from_json, load_instance,
                   partition_blocks, validate_instance, verify_matching)
from .generate import random_instance
from .oracle import brute_force_tiny, solve_flow

__all__ = [
    "CapDPResult", "Errata", "Infeasible", "Instance", "InternalInconsistency",
    "Matching", "MemoryLimitExceeded", "UNREACHABLE", "ValidationError",
    "brute_force_tiny", "feasible", "global_order", "greedy_one_sided",
    "instance_from_json", "load_instance", "partition_blocks", "random_instance",
    "reconstruct_capacitated", "solve_capacitated", "solve_casewise",
    "solve_flow", "solve_unlimited", "validate_instance", "verify_matching",
]
