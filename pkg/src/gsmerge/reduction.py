"""3-partition to paginated merge: construction, lifting and extraction.

After doubling every ``a_j`` and ``B`` (written ``B2``), with ``D = 3*m*B2``
and page size ``3m``, the instance holds one paper ``P`` with ``5m`` versions:

* X_j with ``2*a_j`` citations,
* Y_i with ``D - B2 + 2i`` citations,
* Z_i with ``D + 2i`` citations,

plus odd-cited single papers that form ``m + 2`` blocks: ``3m - 1`` copies
of ``D + 2i - 1`` for each i, ``3m`` copies of ``D + 2m + 1`` and ``5m``
copies of ``B2 - 1``.  A block of at least ``page_size - 1`` equal singles can
never be crossed by a merge, so each Z_i is stuck until some version of P
reaches exactly ``D + 2i`` citations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import MergeAction, MergeError, ProfileState, StepError, Version, apply_merge
from .tpart import (
    InvalidSolution,
    ThreePartitionInstance,
    ThreePartitionSolution,
    check_solution,
    require_valid,
)

PAPER = "P"


class StructureViolation(Exception):
    """A merge witness whose provenance does not decompose into B-summing triples."""


@dataclass(frozen=True)
class ReducedInstance:
    state: ProfileState
    m: int
    B2: int
    D: int
    x_ids: dict[int, int]
    y_ids: dict[int, int]
    z_ids: dict[int, int]
    single_ids: list[int] = field(default_factory=list)

    @property
    def B(self) -> int:
        return self.B2 // 2

    @property
    def source(self) -> ThreePartitionInstance:
        """The undoubled 3-partition instance, read back from the X citations."""
        a = tuple(self.state.get(self.x_ids[j]).citations // 2 for j in sorted(self.x_ids))
        return ThreePartitionInstance(a, self.B)

    def roles(self) -> dict[int, str]:
        out = {vid: f"X{j}" for j, vid in self.x_ids.items()}
        out.update({vid: f"Y{i}" for i, vid in self.y_ids.items()})
        out.update({vid: f"Z{i}" for i, vid in self.z_ids.items()})
        return out


def single_families(m: int, B2: int, D: int) -> list[tuple[int, int]]:
    """``(citations, count)`` for each family of single papers, by descending citations."""
    fams = [(D + 2 * m + 1, 3 * m)]
    fams += [(D + 2 * i - 1, 3 * m - 1) for i in range(m, 0, -1)]
    fams.append((B2 - 1, 5 * m))
    return fams


def reduce_3p(tp: ThreePartitionInstance, tie_order: str = "asc") -> ReducedInstance:
    require_valid(tp)
    m = tp.m
    a2 = [2 * x for x in tp.a]
    B2 = 2 * tp.B
    D = 3 * m * B2

    versions: list[Version] = []

    def add(group, citations):
        vid = len(versions) + 1
        versions.append(Version(vid, group, citations))
        return vid

    x_ids = {j: add(PAPER, x) for j, x in enumerate(a2, start=1)}
    y_ids = {i: add(PAPER, D - B2 + 2 * i) for i in range(1, m + 1)}
    z_ids = {i: add(PAPER, D + 2 * i) for i in range(1, m + 1)}
    single_ids = []
    for citations, count in single_families(m, B2, D):
        for _ in range(count):
            single_ids.append(add(f"S{len(versions) + 1}", citations))

    state = ProfileState(tuple(versions), 3 * m, tie_order=tie_order)
    return ReducedInstance(state, m, B2, D, x_ids, y_ids, z_ids, single_ids)


def count_blocks(reduced: ReducedInstance) -> int:
    """Number of equal-citation single families of size at least ``3m - 1``."""
    counts: dict[int, int] = {}
    for vid in reduced.single_ids:
        c = reduced.state.get(vid).citations
        counts[c] = counts.get(c, 0) + 1
    return sum(1 for n in counts.values() if n >= 3 * reduced.m - 1)


def lift_3p(reduced: ReducedInstance, solution: ThreePartitionSolution) -> list[MergeAction]:
    """Turn a 3-partition solution into a merge plan of ``5m - 1`` steps.

    Every triple is merged down on the last page first (pairs of X versions
    stay below the ``B2 - 1`` block, a full triple lands just above it next to
    the Y versions).  Then for i = 1..m triple i absorbs Y_i, reaching
    ``D + 2i``, and Z_i, which lifts it above every block onto page 1.
    Finally the m components on page 1 are merged into the first one.
    """
    src = reduced.source
    if len(solution.triples) != reduced.m:
        raise InvalidSolution(f"expected {reduced.m} triples, got {len(solution.triples)}")
    check_solution(src, solution)

    state = reduced.state
    plan: list[MergeAction] = []

    def merge(a, b):
        nonlocal state
        plan.append(MergeAction(a, b))
        state, new_id = apply_merge(state, a, b)
        return new_id

    merged_triples = []
    for triple in solution.triples:
        j1, j2, j3 = sorted(triple)
        pair = merge(reduced.x_ids[j1], reduced.x_ids[j2])
        merged_triples.append(merge(pair, reduced.x_ids[j3]))

    components = []
    for i, t in enumerate(merged_triples, start=1):
        with_y = merge(t, reduced.y_ids[i])
        components.append(merge(with_y, reduced.z_ids[i]))

    head = components[0]
    for c in components[1:]:
        head = merge(head, c)
    return plan


def extract_3p(reduced: ReducedInstance, plan) -> ThreePartitionSolution:
    """Read a 3-partition solution off any witness that fully merges P.

    The plan is replayed while tracking which original X indices each live
    version contains.  Whenever an original Z version is merged, the X indices
    of its partner form one triple.
    """
    src = reduced.source
    x_of = {vid: frozenset([j]) for j, vid in reduced.x_ids.items()}
    z_index = {vid: i for i, vid in reduced.z_ids.items()}
    found: dict[int, frozenset] = {}

    state = reduced.state
    for step, (a, b) in enumerate(plan):
        try:
            state, new_id = apply_merge(state, a, b)
        except MergeError as exc:
            raise StepError(step, exc) from exc
        for z, other in ((a, b), (b, a)):
            if z in z_index:
                found[z_index[z]] = x_of.get(other, frozenset())
        x_of[new_id] = x_of.pop(a, frozenset()) | x_of.pop(b, frozenset())
        z_index.pop(a, None)
        z_index.pop(b, None)

    if len(found) != reduced.m:
        missing = sorted(set(reduced.z_ids) - set(found))
        raise StructureViolation(f"Z versions {missing} were never merged")
    triples = []
    for i in sorted(found):
        xs = found[i]
        s = sum(src.a[j - 1] for j in xs)
        if len(xs) != 3 or s != src.B:
            raise StructureViolation(
                f"Z{i} absorbed X indices {sorted(xs)} summing to {s}; expected 3 indices summing to {src.B}"
            )
        triples.append(tuple(sorted(xs)))
    covered = sorted(j for t in triples for j in t)
    if covered != list(range(1, 3 * reduced.m + 1)):
        raise StructureViolation(f"triples {triples} do not partition the X indices")
    return ThreePartitionSolution(tuple(triples))
