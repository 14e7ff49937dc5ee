"""Exact merge-order search.

Depth-first over legal pairwise merges with a transposition table keyed on
:func:`gsmerge.core.canonical_key`.  Every key that is expanded and returned
from is infeasible (the search stops at the first witness), so the table is
simply the set of expanded keys.

Internally a node is three parallel lists in ranked order (citations, group,
id); this avoids rebuilding :class:`~gsmerge.core.ProfileState` objects at
every node.  Merge semantics mirror ``core.apply_merge`` exactly.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from .core import INERT, MergeAction, ProfileState, legal_actions  # noqa: F401

DEFAULT_NODE_BUDGET = 10**7


class ResourceLimit(Exception):
    """The search budget ran out; the instance is undecided, not infeasible."""

    def __init__(self, kind: str, limit: int, stats: "SolveStats"):
        super().__init__(f"{kind} budget of {limit} exceeded")
        self.kind = kind
        self.limit = limit
        self.stats = stats


@dataclass
class SolveStats:
    nodes_expanded: int = 0
    memo_hits: int = 0
    peak_memo_size: int = 0


@dataclass
class SolveResult:
    feasible: bool
    plan: list[MergeAction] | None
    stats: SolveStats = field(default_factory=SolveStats)


class _Node:
    __slots__ = ("cits", "groups", "ids", "next_id", "sizes")

    def __init__(self, cits, groups, ids, next_id, sizes):
        self.cits = cits
        self.groups = groups
        self.ids = ids
        self.next_id = next_id
        self.sizes = sizes

    @classmethod
    def from_state(cls, state: ProfileState) -> "_Node":
        vs = state.versions
        return cls(
            [v.citations for v in vs],
            [v.group for v in vs],
            [v.id for v in vs],
            state.next_id,
            dict(state.group_sizes),
        )

    def key(self):
        sizes = self.sizes
        classes = {}
        out = []
        for c, g in zip(self.cits, self.groups):
            if sizes[g] == 1:
                out.append((c, INERT))
            else:
                cls = classes.get(g)
                if cls is None:
                    cls = classes[g] = len(classes) + 1
                out.append((c, cls))
        return tuple(out)

    def done(self) -> bool:
        return all(n == 1 for n in self.sizes.values())

    def actions(self, page_size: int) -> list[tuple[int, int]]:
        """Position pairs ``(i, j)``, bottom page first, then by rank within a page."""
        sizes, groups = self.sizes, self.groups
        n = len(groups)
        out = []
        for start in range(((n - 1) // page_size) * page_size, -1, -page_size):
            stop = min(start + page_size, n)
            for i in range(start, stop):
                g = groups[i]
                if sizes[g] < 2:
                    continue
                for j in range(i + 1, stop):
                    if groups[j] == g:
                        out.append((i, j))
        return out

    def merge(self, i: int, j: int, desc_ties: bool) -> "_Node":
        cits, groups, ids = self.cits, self.groups, self.ids
        c = cits[i] + cits[j]
        g = groups[i]
        keep = [k for k in range(len(cits)) if k != i and k != j]
        new_cits = [cits[k] for k in keep]
        # Insertion point in a descending list: bisect on negated values.
        neg = [-x for x in new_cits]
        pos = bisect.bisect_left(neg, -c) if desc_ties else bisect.bisect_right(neg, -c)
        new_cits.insert(pos, c)
        new_groups = [groups[k] for k in keep]
        new_groups.insert(pos, g)
        new_ids = [ids[k] for k in keep]
        new_ids.insert(pos, self.next_id)
        sizes = dict(self.sizes)
        sizes[g] -= 1
        return _Node(new_cits, new_groups, new_ids, self.next_id + 1, sizes)


def solve(
    state: ProfileState,
    max_nodes: int | None = DEFAULT_NODE_BUDGET,
    max_memo: int | None = None,
) -> SolveResult:
    """Decide whether every group of ``state`` can be merged into one version.

    Returns a witness plan when feasible.  Raises :class:`ResourceLimit` when
    ``max_nodes`` expansions or ``max_memo`` table entries would be exceeded.
    """
    stats = SolveStats()
    p = state.page_size
    desc = state.tie_order == "desc"
    root = _Node.from_state(state)
    if root.done():
        return SolveResult(True, [], stats)

    seen: set = set()

    def expand(node):
        key = node.key()
        if key in seen:
            stats.memo_hits += 1
            return None
        if max_nodes is not None and stats.nodes_expanded >= max_nodes:
            raise ResourceLimit("nodes", max_nodes, stats)
        if max_memo is not None and len(seen) >= max_memo:
            raise ResourceLimit("memory", max_memo, stats)
        seen.add(key)
        stats.nodes_expanded += 1
        stats.peak_memo_size = len(seen)
        return iter(node.actions(p))

    # stack of (node, action iterator); path[k] is the merge leading to stack[k + 1]
    stack = [(root, expand(root))]
    path: list[MergeAction] = []
    while stack:
        node, it = stack[-1]
        step = next(it, None)
        if step is None:
            stack.pop()
            if path:
                path.pop()
            continue
        i, j = step
        child = node.merge(i, j, desc)
        action = MergeAction(node.ids[i], node.ids[j])
        if child.done():
            return SolveResult(True, path + [action], stats)
        child_it = expand(child)
        if child_it is None:
            continue
        stack.append((child, child_it))
        path.append(action)
    return SolveResult(False, None, stats)
