"""Grammar productions in static and dynamic form, and their swap encoding.

A production is stored statically as a left and right hand side and
dynamically as deletion/addition matrices and vectors derived from them.
The nihilation matrix collects the edges whose presence in a host disables
the rule: edges incident to deleted nodes plus edges the rule adds.

The swap operator folds a rule's actions into a self-adjoint complex term:
applying it via the dot product exchanges certainty and nihil entries at
the cells the rule touches and keeps the rest, which reproduces rewriting
``lhs -> rhs`` together with the nihilation evolution in one expression.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolmat import (
    BoolMatrix,
    BoolVector,
    Digraph,
    NodeUniverse,
    UniverseMismatchError,
    bounded_one,
    complement,
    is_compatible,
    tensor,
)
from .mcl import ComplexTerm, dot


@dataclass(frozen=True)
class Production:
    """A rewriting rule with derived dynamic matrices.

    ``deleted_*``/``added_*`` are the rule's actions; ``nihilation`` is the
    forbidden-edge matrix of the left hand side and ``rhs_nihilation`` its
    evolution to the right hand side.  All components live on one universe,
    and complements are bounded by the all-ones block over it.
    """

    name: str
    lhs: Digraph
    rhs: Digraph
    deleted_edges: BoolMatrix
    added_edges: BoolMatrix
    deleted_nodes: BoolVector
    added_nodes: BoolVector
    nihilation: BoolMatrix
    rhs_nihilation: BoolMatrix
    compatible: bool

    @property
    def universe(self) -> NodeUniverse:
        return self.lhs.universe

    @classmethod
    def from_static(cls, name: str, lhs: Digraph, rhs: Digraph) -> "Production":
        """Derive the dynamic form from a static (lhs, rhs) pair.

        The deletion part is whatever the left side has and the right side
        lacks; the addition part the converse.  Any pair of digraphs over a
        shared universe defines a rule; ``compatible`` records whether its
        application preserves dangling-edge freedom.
        """
        if lhs.universe != rhs.universe:
            raise UniverseMismatchError("lhs and rhs must share a universe")
        u = lhs.universe
        ones_v = BoolVector.ones(u)
        ones_e = BoolMatrix.ones(u)

        deleted_edges = lhs.edges & complement(rhs.edges, ones_e)
        added_edges = rhs.edges & complement(lhs.edges, ones_e)
        deleted_nodes = lhs.nodes & complement(rhs.nodes, ones_v)
        added_nodes = rhs.nodes & complement(lhs.nodes, ones_v)

        nihil = nihilation_matrix(deleted_edges, deleted_nodes, added_edges)
        rhs_nihil = deleted_edges | (complement(added_edges, ones_e) & nihil)
        # The forbidden-overlap test alone misses added edges that dangle
        # (they are excluded from the rhs nihilation), so require the rhs to
        # be a proper digraph as well.
        compatible = (rhs.edges & rhs_nihil).is_zero() and is_compatible(rhs)
        return cls(
            name,
            lhs,
            rhs,
            deleted_edges,
            added_edges,
            deleted_nodes,
            added_nodes,
            nihil,
            rhs_nihil,
            compatible,
        )

    @classmethod
    def identity(cls, name: str, graph: Digraph) -> "Production":
        return cls.from_static(name, graph, graph)

    def lhs_term(self) -> ComplexTerm:
        """Left hand side as a complex term: lhs certain, nihilation forbidden.

        The nihil node component stays empty; node bookkeeping is carried by
        the certainty part alone.
        """
        u = self.universe
        return ComplexTerm(
            self.lhs.edges,
            self.lhs.nodes,
            self.nihilation,
            BoolVector.zeros(u),
            BoolVector.ones(u),
        )

    def rhs_term(self) -> ComplexTerm:
        u = self.universe
        return ComplexTerm(
            self.rhs.edges,
            self.rhs.nodes,
            self.rhs_nihilation,
            BoolVector.zeros(u),
            BoolVector.ones(u),
        )

    def is_identity(self) -> bool:
        return (
            self.deleted_edges.is_zero()
            and self.added_edges.is_zero()
            and self.deleted_nodes.is_zero()
            and self.added_nodes.is_zero()
        )


def nihilation_matrix(
    deleted_edges: BoolMatrix,
    deleted_nodes: BoolVector,
    added_edges: BoolMatrix,
) -> BoolMatrix:
    """Forbidden edges of a rule's left hand side.

    Covers edges incident to a deleted node that the rule does not itself
    delete, plus every edge the rule adds (parallel edges are not allowed
    in simple digraphs).
    """
    u = deleted_edges.universe
    ones_v = BoolVector.ones(u)
    ones_e = BoolMatrix.ones(u)
    kept_nodes = complement(deleted_nodes, ones_v)
    kept_block = tensor(kept_nodes, kept_nodes)
    dangling = complement(kept_block, ones_e)
    return added_edges | (complement(deleted_edges, ones_e) & dangling)


def nihilation(p: Production) -> BoolMatrix:
    """The forbidden-edge matrix of p's left hand side."""
    return p.nihilation


def evolve_nihil(p: Production) -> BoolMatrix:
    """Forbidden edges after applying p: deletions reappear, additions exist."""
    return p.rhs_nihilation


def production_compatible(p: Production) -> bool:
    """True iff applying p to a legal host again yields a simple digraph.

    The right hand side must share no edge with its nihilation and must be
    dangling-free itself (added edges touching absent nodes fail here).
    """
    return p.compatible


def apply_production(p: Production, x: Digraph) -> Digraph:
    """Pure rewriting formula: added v (not-deleted ^ x), edges and nodes."""
    if x.universe != p.universe:
        raise UniverseMismatchError("operand must be completed to the rule universe")
    u = p.universe
    keep_e = complement(p.deleted_edges, BoolMatrix.ones(u))
    keep_v = complement(p.deleted_nodes, BoolVector.ones(u))
    return Digraph(
        p.added_edges | (keep_e & x.edges),
        p.added_nodes | (keep_v & x.nodes),
    )


@dataclass(frozen=True)
class Swap:
    """Dynamics of a rule up to its left hand side.

    Self-adjoint by construction, so only the nihil part (the touched
    cells) is stored; the certainty part is its bounded complement.
    """

    nihil_edges: BoolMatrix
    nihil_nodes: BoolVector
    ambient: BoolVector

    @property
    def universe(self) -> NodeUniverse:
        return self.nihil_edges.universe

    @property
    def term(self) -> ComplexTerm:
        return ComplexTerm(
            complement(self.nihil_edges, bounded_one(self.ambient)),
            complement(self.nihil_nodes, self.ambient),
            self.nihil_edges,
            self.nihil_nodes,
            self.ambient,
        )

    def touched_edge_count(self) -> int:
        return self.nihil_edges.count()


def p_operator(p: Production) -> Swap:
    """Collapse a rule to its swap: nihil part = every cell the rule touches."""
    return Swap(
        p.deleted_edges | p.added_edges,
        p.deleted_nodes | p.added_nodes,
        BoolVector.ones(p.universe),
    )


def apply_swap(w: Swap, z: ComplexTerm) -> ComplexTerm:
    """Dot product of z with the swap term.

    Cells in the swap's nihil part trade places between z's certainty and
    nihil components; cells in its certainty part are kept as they are.
    """
    if w.universe != z.universe:
        raise UniverseMismatchError("swap and term must share a universe")
    return dot(z, w.term)


@dataclass(frozen=True)
class CensusTable:
    """Swap classes of every production over a small universe."""

    node_count: int
    production_count: int
    class_sizes: tuple[tuple[Swap, int], ...]
    histogram: tuple[int, ...]

    def swap_count(self) -> int:
        return len(self.class_sizes)


def _census_from_groups(node_count: int, groups: dict[int, int], total: int) -> CensusTable:
    u = NodeUniverse(tuple(str(i + 1) for i in range(node_count)))
    cells = node_count * node_count
    ambient = BoolVector.ones(u)
    classes = []
    histogram = [0] * (cells + 1)
    for nihil_bits in sorted(groups):
        swap = Swap(BoolMatrix(u, nihil_bits), BoolVector.zeros(u), ambient)
        classes.append((swap, groups[nihil_bits]))
        histogram[swap.touched_edge_count()] += 1
    return CensusTable(node_count, total, tuple(classes), tuple(histogram))


def swap_census(node_count: int) -> CensusTable:
    """Group every (lhs, rhs) edge-set pair over n nodes by its swap.

    All nodes are taken as present on both sides, so the enumeration ranges
    over the 2^(n*n) x 2^(n*n) static pairs.
    """
    if node_count > 2:
        raise ValueError("census enumeration is limited to 2 nodes")
    u = NodeUniverse(tuple(str(i + 1) for i in range(node_count)))
    cells = node_count * node_count
    all_nodes = BoolVector.ones(u)
    groups: dict[int, int] = {}
    total = 0
    for lhs_bits in range(1 << cells):
        lhs = Digraph(BoolMatrix(u, lhs_bits), all_nodes)
        for rhs_bits in range(1 << cells):
            rhs = Digraph(BoolMatrix(u, rhs_bits), all_nodes)
            p = Production.from_static("census", lhs, rhs)
            w = p_operator(p)
            groups[w.nihil_edges.bits] = groups.get(w.nihil_edges.bits, 0) + 1
            total += 1
    return _census_from_groups(node_count, groups, total)
