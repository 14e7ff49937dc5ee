"""Paginated merge planning: exact solver, plan verifier and the 3-partition reduction."""

from .core import (
    CrossGroupMerge,
    MergeAction,
    MergeError,
    PageViolation,
    ProfileState,
    SelfMerge,
    StepError,
    UnknownVersion,
    Version,
    apply_merge,
    apply_plan,
    canonical_key,
    is_fully_merged,
    legal_actions,
    mergeable,
    page_of,
    rank_all,
)
from .reduction import ReducedInstance, StructureViolation, extract_3p, lift_3p, reduce_3p
from .solver import ResourceLimit, SolveResult, solve
from .tpart import (
    InvalidSolution,
    InvalidThreePartition,
    ThreePartitionInstance,
    ThreePartitionSolution,
    brute_force_3p,
    gen_random,
    gen_solvable,
    validate,
)

__version__ = "0.1.0"
