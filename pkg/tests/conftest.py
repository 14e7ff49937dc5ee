import itertools

import pytest

from gsmerge.core import ProfileState, Version, apply_merge, is_fully_merged, mergeable
from gsmerge.reduction import reduce_3p
from gsmerge.tpart import ThreePartitionInstance


def naive_feasible(state):
    """Exhaustive search over every legal merge sequence; no memoization.

    Legal pairs are found by testing ``mergeable`` on every pair of ids, so
    this shares nothing with the solver's action generation or keying.
    """
    if is_fully_merged(state):
        return True
    ids = [v.id for v in state.versions]
    for a, b in itertools.combinations(ids, 2):
        if mergeable(state, a, b):
            if naive_feasible(apply_merge(state, a, b)[0]):
                return True
    return False


def reachable_states(state):
    """Every state reachable from ``state`` by legal merges (ids included)."""
    seen = {state}
    todo = [state]
    while todo:
        s = todo.pop()
        ids = [v.id for v in s.versions]
        for a, b in itertools.combinations(ids, 2):
            if mergeable(s, a, b):
                t = apply_merge(s, a, b)[0]
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
    return seen


def order_dependence_state():
    """110 versions cited 2000 - r at rank r; paper A at ranks 4, 12 and B at 101, 107."""
    groups = {4: "A", 12: "A", 101: "B", 107: "B"}
    versions = [Version(r, groups.get(r, f"S{r}"), 2000 - r) for r in range(1, 111)]
    return ProfileState(tuple(versions), 100)


M1 = ThreePartitionInstance((4, 4, 4), 12)


@pytest.fixture
def m1():
    return reduce_3p(M1)


@pytest.fixture
def order_state():
    return order_dependence_state()


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[k])
