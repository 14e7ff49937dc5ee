"""3-partition: validation, a brute-force oracle and instance generators.

Indices into ``a`` are 1-based throughout, matching the instance and
solution file formats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence


class InvalidThreePartition(ValueError):
    pass


class InvalidSolution(ValueError):
    pass


class Unsatisfiable(ValueError):
    def __init__(self, m: int, B: int, detail: str = ""):
        msg = f"no valid 3-partition instance for m={m}, B={B}"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.m = m
        self.B = B


@dataclass(frozen=True)
class ThreePartitionInstance:
    a: tuple[int, ...]
    B: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))

    @property
    def m(self) -> int:
        return len(self.a) // 3


@dataclass(frozen=True)
class ThreePartitionSolution:
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))

    def sums(self, instance: ThreePartitionInstance) -> list[int]:
        return [sum(instance.a[j - 1] for j in t) for t in self.triples]


def validate(instance: ThreePartitionInstance) -> Optional[str]:
    """Return ``None`` when ``instance`` is valid, otherwise the first violation."""
    a, B = instance.a, instance.B
    if not isinstance(B, int) or B < 1:
        return f"B must be a positive integer, got {B!r}"
    if len(a) == 0 or len(a) % 3:
        return f"need 3m integers with m >= 1, got {len(a)}"
    for j, x in enumerate(a, start=1):
        if not isinstance(x, int) or x < 1:
            return f"a_{j} = {x!r} is not a positive integer"
        # B/4 < x < B/2, in integers
        if not 4 * x > B:
            return f"a_{j} = {x} is not strictly greater than B/4 = {B / 4}"
        if not 2 * x < B:
            return f"a_{j} = {x} is not strictly less than B/2 = {B / 2}"
    if sum(a) != instance.m * B:
        return f"sum of a is {sum(a)}, expected m*B = {instance.m * B}"
    return None


def require_valid(instance: ThreePartitionInstance) -> None:
    reason = validate(instance)
    if reason is not None:
        raise InvalidThreePartition(reason)


def check_solution(instance: ThreePartitionInstance, solution: ThreePartitionSolution) -> None:
    """Raise :class:`InvalidSolution` unless ``solution`` partitions ``instance``."""
    n = len(instance.a)
    seen: list[int] = []
    for t in solution.triples:
        if len(t) != 3:
            raise InvalidSolution(f"triple {t} does not have 3 elements")
        for j in t:
            if not 1 <= j <= n:
                raise InvalidSolution(f"index {j} out of range 1..{n}")
        s = sum(instance.a[j - 1] for j in t)
        if s != instance.B:
            raise InvalidSolution(f"triple {t} sums to {s}, expected B = {instance.B}")
        seen.extend(t)
    if sorted(seen) != list(range(1, n + 1)):
        raise InvalidSolution("triples do not cover every index exactly once")


def brute_force_3p(instance: ThreePartitionInstance) -> Optional[ThreePartitionSolution]:
    """Lexicographically first solution, or ``None``.

    Backtracks on the lowest unassigned index; exhaustive.
    """
    require_valid(instance)
    a, B = instance.a, instance.B
    n = len(a)
    used = [False] * n
    chosen: list[tuple[int, int, int]] = []

    def search() -> bool:
        try:
            i = used.index(False)
        except ValueError:
            return True
        used[i] = True
        for j in range(i + 1, n):
            if used[j]:
                continue
            used[j] = True
            for k in range(j + 1, n):
                if not used[k] and a[i] + a[j] + a[k] == B:
                    used[k] = True
                    chosen.append((i + 1, j + 1, k + 1))
                    if search():
                        return True
                    chosen.pop()
                    used[k] = False
            used[j] = False
        used[i] = False
        return False

    return ThreePartitionSolution(tuple(chosen)) if search() else None


def interval(B: int) -> range:
    """Integers strictly between B/4 and B/2."""
    return range(B // 4 + 1, (B - 1) // 2 + 1)


def candidate_triples(B: int) -> list[tuple[int, int, int]]:
    vals = interval(B)
    return [
        (x, y, B - x - y)
        for x in vals
        for y in vals
        if x <= y <= B - x - y and (B - x - y) in vals
    ]


def gen_solvable(m: int, B: int, seed: int) -> ThreePartitionInstance:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    triples = candidate_triples(B)
    if not triples:
        raise Unsatisfiable(m, B, "no triple in (B/4, B/2) sums to B")
    rng = random.Random(seed)
    a = [x for _ in range(m) for x in rng.choice(triples)]
    rng.shuffle(a)
    return ThreePartitionInstance(tuple(a), B)


def gen_random(m: int, B: int, seed: int, max_tries: int = 100_000) -> ThreePartitionInstance:
    """Uniform over value tuples in (B/4, B/2) with total m*B; may be unsolvable.

    Draws the first 3m-1 values and accepts when the forced last value is in
    range, which is exact rejection sampling of the conditioned distribution.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    vals = interval(B)
    if not vals:
        raise Unsatisfiable(m, B, "interval (B/4, B/2) holds no integer")
    rng = random.Random(seed)
    total = m * B
    for _ in range(max_tries):
        head = [rng.choice(vals) for _ in range(3 * m - 1)]
        last = total - sum(head)
        if last in vals:
            return ThreePartitionInstance(tuple(head + [last]), B)
    raise Unsatisfiable(m, B, f"rejection sampling gave up after {max_tries} tries")


def triples_from_indices(groups: Sequence[Sequence[int]]) -> ThreePartitionSolution:
    return ThreePartitionSolution(tuple(tuple(sorted(g)) for g in groups))
