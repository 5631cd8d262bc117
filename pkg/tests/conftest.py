"""Shared fixtures: small universes and the worked example rules."""

import pytest

from mgg import Digraph, NodeUniverse, Production, RuleSequence


@pytest.fixture(scope="session")
def u2():
    return NodeUniverse.of("a", "b")


@pytest.fixture(scope="session")
def u3():
    return NodeUniverse.of("a", "b", "c")


def rule(universe, name, lhs_nodes, lhs_edges, rhs_nodes, rhs_edges):
    return Production.from_static(
        name,
        Digraph.of(universe, lhs_nodes, lhs_edges),
        Digraph.of(universe, rhs_nodes, rhs_edges),
    )


@pytest.fixture(scope="session")
def retire(u3):
    """Drops node c with its stray links, rewires b back to a."""
    return rule(
        u3,
        "retire",
        "abc",
        [("a", "a"), ("a", "b"), ("c", "a"), ("c", "b")],
        "ab",
        [("a", "a"), ("b", "a")],
    )


@pytest.fixture(scope="session")
def recruit(u3):
    """Brings node c back, fanning out fresh edges from a and b."""
    return rule(
        u3,
        "recruit",
        "ab",
        [("b", "a"), ("b", "b")],
        "abc",
        [("b", "a"), ("b", "b"), ("a", "b"), ("a", "c"), ("b", "c")],
    )


@pytest.fixture(scope="session")
def handover(retire, recruit):
    return RuleSequence.of(retire, recruit)


@pytest.fixture(scope="session")
def fanout(u3):
    """Consumes the c self-loop and adds the triangle fan."""
    return rule(
        u3,
        "fanout",
        "abc",
        [("c", "c")],
        "abc",
        [("a", "b"), ("a", "c"), ("b", "c")],
    )


@pytest.fixture(scope="session")
def cut(u3):
    """Deletes node a and its edge to b, then links b to c."""
    return rule(
        u3,
        "cut",
        "abc",
        [("a", "b"), ("c", "c")],
        "bc",
        [("b", "c"), ("c", "c")],
    )


@pytest.fixture(scope="session")
def clash(fanout, cut):
    """Two-rule sequence with known coherence defects."""
    return RuleSequence.of(fanout, cut)
