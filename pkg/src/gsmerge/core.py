"""Deterministic model of a paginated publication profile.

Versions are displayed sorted by citation count (descending), cut into pages
of ``page_size`` consecutive ranks.  Two versions of the same paper can be
merged only while they sit on the same page; the merged version carries the
summed citations and a fresh id, and the list is re-sorted.

Ties are broken by id (ascending by default).  Because a merged version always
receives an id larger than every id seen so far, it ranks after every
incumbent with the same citation count.  ``tie_order="desc"`` flips this.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

TIE_ORDERS = ("asc", "desc")

# Marker used by canonical_key for groups that currently hold a single version.
INERT = 0


class MergeError(Exception):
    """Base class for illegal merge actions."""


class UnknownVersion(MergeError, KeyError):
    def __init__(self, vid):
        super().__init__(vid)
        self.vid = vid

    def __str__(self):
        return f"unknown version id {self.vid!r}"


class SelfMerge(MergeError):
    pass


class CrossGroupMerge(MergeError):
    pass


class PageViolation(MergeError):
    pass


class StepError(Exception):
    """Raised by :func:`apply_plan`; ``index`` is the 0-based failing step."""

    def __init__(self, index: int, cause: MergeError):
        super().__init__(f"step {index}: {cause}")
        self.index = index
        self.cause = cause


@dataclass(frozen=True)
class Version:
    id: int
    group: Hashable
    citations: int

    def __post_init__(self):
        if not isinstance(self.id, int) or self.id < 1:
            raise ValueError(f"version id must be a positive integer, got {self.id!r}")
        if not isinstance(self.citations, int) or self.citations < 0:
            raise ValueError(f"citations must be a non-negative integer, got {self.citations!r}")


@dataclass(frozen=True)
class MergeAction:
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise SelfMerge(f"cannot merge version {self.a} with itself")

    def __iter__(self):
        return iter((self.a, self.b))


MergePlan = Sequence[MergeAction]


def _sort_key(tie_order: str):
    if tie_order == "asc":
        return lambda v: (-v.citations, v.id)
    return lambda v: (-v.citations, -v.id)


@dataclass(frozen=True)
class ProfileState:
    """An immutable profile.  ``versions`` is kept in ranked (display) order."""

    versions: tuple[Version, ...]
    page_size: int
    next_id: int | None = None
    tie_order: str = "asc"

    def __post_init__(self):
        if not isinstance(self.page_size, int) or self.page_size < 1:
            raise ValueError(f"page_size must be >= 1, got {self.page_size!r}")
        if self.tie_order not in TIE_ORDERS:
            raise ValueError(f"tie_order must be one of {TIE_ORDERS}, got {self.tie_order!r}")
        versions = tuple(sorted(self.versions, key=_sort_key(self.tie_order)))
        ids = [v.id for v in versions]
        if len(set(ids)) != len(ids):
            raise ValueError("version ids must be distinct")
        top = max(ids, default=0)
        next_id = top + 1 if self.next_id is None else self.next_id
        if next_id <= top:
            raise ValueError(f"next_id {next_id} must exceed every id (max {top})")
        object.__setattr__(self, "versions", versions)
        object.__setattr__(self, "next_id", next_id)

    @classmethod
    def build(
        cls,
        entries: Iterable[tuple[Hashable, int]],
        page_size: int,
        tie_order: str = "asc",
    ) -> "ProfileState":
        """Make a state from ``(group, citations)`` pairs, ids 1..n in input order."""
        versions = [Version(i, g, c) for i, (g, c) in enumerate(entries, start=1)]
        return cls(tuple(versions), page_size, tie_order=tie_order)

    @cached_property
    def _index(self) -> dict[int, int]:
        return {v.id: r for r, v in enumerate(self.versions)}

    @cached_property
    def group_sizes(self) -> dict[Hashable, int]:
        sizes: dict[Hashable, int] = {}
        for v in self.versions:
            sizes[v.group] = sizes.get(v.group, 0) + 1
        return sizes

    def __len__(self):
        return len(self.versions)

    def __contains__(self, vid) -> bool:
        return vid in self._index

    def get(self, vid: int) -> Version:
        try:
            return self.versions[self._index[vid]]
        except KeyError:
            raise UnknownVersion(vid) from None

    def rank(self, vid: int) -> int:
        """1-based display rank of ``vid``."""
        try:
            return self._index[vid] + 1
        except KeyError:
            raise UnknownVersion(vid) from None

    def page(self, vid: int) -> int:
        return page_of(self.rank(vid), self.page_size)

    def at_rank(self, rank: int) -> Version:
        return self.versions[rank - 1]

    @property
    def n_pages(self) -> int:
        return -(-len(self.versions) // self.page_size)

    def pages(self) -> list[tuple[Version, ...]]:
        p = self.page_size
        return [self.versions[i : i + p] for i in range(0, len(self.versions), p)]

    def total_citations(self) -> int:
        return sum(v.citations for v in self.versions)


def rank_all(state: ProfileState) -> tuple[int, ...]:
    """Full display order as a tuple of ids."""
    return tuple(v.id for v in state.versions)


def page_of(rank: int, page_size: int) -> int:
    if rank < 1 or page_size < 1:
        raise ValueError(f"rank and page_size must be >= 1, got {rank}, {page_size}")
    return (rank - 1) // page_size + 1


def mergeable(state: ProfileState, a: int, b: int) -> bool:
    va, vb = state.get(a), state.get(b)
    if a == b or va.group != vb.group:
        return False
    return state.page(a) == state.page(b)


def check_merge(state: ProfileState, a: int, b: int) -> None:
    """Raise the specific :class:`MergeError` that makes ``(a, b)`` illegal, if any."""
    va, vb = state.get(a), state.get(b)
    if a == b:
        raise SelfMerge(f"cannot merge version {a} with itself")
    if va.group != vb.group:
        raise CrossGroupMerge(f"versions {a} and {b} belong to groups {va.group!r} and {vb.group!r}")
    ra, rb = state.rank(a), state.rank(b)
    pa, pb = page_of(ra, state.page_size), page_of(rb, state.page_size)
    if pa != pb:
        raise PageViolation(
            f"versions {a} (rank {ra}, page {pa}) and {b} (rank {rb}, page {pb}) are on different pages"
        )


def apply_merge(state: ProfileState, a: int, b: int) -> tuple[ProfileState, int]:
    check_merge(state, a, b)
    va, vb = state.get(a), state.get(b)
    new_id = state.next_id
    merged = Version(new_id, va.group, va.citations + vb.citations)
    rest = tuple(v for v in state.versions if v.id != a and v.id != b)
    new_state = ProfileState(rest + (merged,), state.page_size, new_id + 1, state.tie_order)
    return new_state, new_id


def apply_plan(state: ProfileState, plan: Iterable) -> list[ProfileState]:
    """Replay ``plan`` and return the trace ``[initial, after step 0, ...]``.

    Steps may be :class:`MergeAction` objects or plain ``(a, b)`` pairs.  The
    first illegal step raises :class:`StepError`.
    """
    trace = [state]
    for i, step in enumerate(plan):
        a, b = step
        try:
            state, _ = apply_merge(state, a, b)
        except MergeError as exc:
            raise StepError(i, exc) from exc
        trace.append(state)
    return trace


def is_fully_merged(state: ProfileState) -> bool:
    return all(n == 1 for n in state.group_sizes.values())


def canonical_key(state: ProfileState) -> tuple[tuple[int, int], ...]:
    """Ranked ``(citations, group_class)`` pairs.

    Groups with one version map to :data:`INERT`; the remaining groups are
    numbered 1, 2, ... by first appearance in the ranked order, so states that
    differ only in labels share a key.
    """
    sizes = state.group_sizes
    classes: dict[Hashable, int] = {}
    key = []
    for v in state.versions:
        if sizes[v.group] == 1:
            key.append((v.citations, INERT))
        else:
            cls = classes.setdefault(v.group, len(classes) + 1)
            key.append((v.citations, cls))
    return tuple(key)


def legal_actions(state: ProfileState) -> list[MergeAction]:
    """Every legal pairwise merge, ``a`` ranked above ``b``, sorted by ``(rank(a), rank(b))``."""
    sizes = state.group_sizes
    actions = []
    for page in state.pages():
        for i, va in enumerate(page):
            if sizes[va.group] < 2:
                continue
            for vb in page[i + 1 :]:
                if vb.group == va.group:
                    actions.append(MergeAction(va.id, vb.id))
    return actions
