"""Sequential analysis of completed rule sequences.

Sequences are stored in application order (index 0 applies first); the
closed-form analyses index rules by 1-based position, so position 1 is the
first rule applied.  All rules must already be completed to one shared
universe, i.e. node identifications across rules have been decided.

The analyses: coherence (no rule disturbs a later one), the initial digraph
(smallest host firing the sequence, plus the forbidden edges), the image of
the sequence, sequence compatibility, and G-congruence against the
advance/delay permutations.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .boolmat import (
    BoolMatrix,
    BoolVector,
    NodeUniverse,
    UniverseMismatchError,
    complement,
    tensor,
)
from .mcl import ComplexTerm
from .production import Production


class IncoherentSequenceWarning(UserWarning):
    """Initial digraph requested for a sequence that is not coherent."""


@dataclass(frozen=True)
class RuleSequence:
    """Rules over one universe, stored in application order."""

    rules: tuple[Production, ...]

    def __post_init__(self) -> None:
        if not self.rules:
            raise ValueError("a sequence needs at least one rule")
        u = self.rules[0].universe
        if any(p.universe != u for p in self.rules):
            raise UniverseMismatchError("sequence rules must share one universe")

    @classmethod
    def of(cls, *rules: Production) -> "RuleSequence":
        return cls(tuple(rules))

    @property
    def universe(self) -> NodeUniverse:
        return self.rules[0].universe

    def __len__(self) -> int:
        return len(self.rules)

    def rule(self, position: int) -> Production:
        """Rule at 1-based application position."""
        return self.rules[position - 1]

    def prefix(self, length: int) -> "RuleSequence":
        return RuleSequence(self.rules[:length])

    def composition_order(self) -> str:
        """Right-to-left rendering, last-applied first (composition style)."""
        return ";".join(p.name for p in reversed(self.rules))

    def advanced(self) -> "RuleSequence":
        """Permutation applying the last rule first."""
        return RuleSequence((self.rules[-1],) + self.rules[:-1])

    def delayed(self) -> "RuleSequence":
        """Permutation applying the first rule last."""
        return RuleSequence(self.rules[1:] + (self.rules[0],))


def delta(t0: int, t1: int, family, zero):
    """OR over y in [t0, t1] of the AND over x in [y, t1] of family(x, y).

    An empty outer range yields ``zero``; the inner range is never empty
    when the outer one is not.
    """
    acc = zero
    for y in range(t0, t1 + 1):
        term = None
        for x in range(y, t1 + 1):
            value = family(x, y)
            term = value if term is None else term & value
        acc = acc | term
    return acc


def nabla(t0: int, t1: int, family, zero):
    """OR over y in [t0, t1] of the AND over x in [t0, y] of family(x, y)."""
    acc = zero
    for y in range(t0, t1 + 1):
        term = None
        for x in range(t0, y + 1):
            value = family(x, y)
            term = value if term is None else term & value
        acc = acc | term
    return acc


@dataclass(frozen=True)
class Witness:
    """One problematic cell: which rule position flags which edge or node."""

    part: str  # "+" (certainty) or "-" (nihil)
    position: int
    source: str
    target: str
    is_node: bool = False

    def render(self) -> str:
        if self.is_node:
            return f"{self.part} {self.position} node {self.source}"
        return f"{self.part} {self.position} {self.source}->{self.target}"


@dataclass(frozen=True)
class AnalysisReport:
    kind: str
    ok: bool
    term: ComplexTerm
    witnesses: tuple[Witness, ...] = ()
    notes: tuple[str, ...] = ()
    extras: tuple[tuple[str, BoolMatrix], ...] = ()


def _cells_of(m: BoolMatrix, part: str, position: int) -> list[Witness]:
    labels = m.universe.labels
    n = len(labels)
    return [
        Witness(part, position, labels[i], labels[j])
        for i in range(n)
        for j in range(n)
        if m[i, j]
    ]


def _nodes_of(v: BoolVector, part: str, position: int) -> list[Witness]:
    return [
        Witness(part, position, label, label, is_node=True) for label in v.labels()
    ]


def _edge_term(universe: NodeUniverse, plus: BoolMatrix, minus: BoolMatrix) -> ComplexTerm:
    zero_v = BoolVector.zeros(universe)
    return ComplexTerm(plus, zero_v, minus, zero_v, BoolVector.ones(universe))


def _not_e(p: Production) -> BoolMatrix:
    return complement(p.deleted_edges, BoolMatrix.ones(p.universe))


def _not_r(p: Production) -> BoolMatrix:
    return complement(p.added_edges, BoolMatrix.ones(p.universe))


def coherence(s: RuleSequence) -> AnalysisReport:
    """Coherence defect term of a sequence; zero means coherent.

    The certainty part collects double additions and uses of deleted
    elements, for edges and for nodes alike; the nihil part collects
    double deletions and additions of forbidden edges (the nihilation
    carries no nodes).  Witnesses name the rule position whose needs are
    disturbed, one per flagged cell occurrence.
    """
    n = len(s)
    u = s.universe
    zero = BoolMatrix.zeros(u)
    zero_v = BoolVector.zeros(u)
    ones_v = BoolVector.ones(u)
    c_plus = zero
    c_minus = zero
    c_plus_nodes = zero_v
    witnesses: list[Witness] = []
    for j in range(1, n + 1):
        pj = s.rule(j)
        plus_j = (
            pj.rhs.edges
            & nabla(j + 1, n, lambda x, y: _not_e(s.rule(x)) & s.rule(y).added_edges, zero)
        ) | (
            pj.lhs.edges
            & delta(1, j - 1, lambda x, y: s.rule(y).deleted_edges & _not_r(s.rule(x)), zero)
        )
        minus_j = (
            pj.rhs_nihilation
            & nabla(j + 1, n, lambda x, y: s.rule(y).deleted_edges & _not_r(s.rule(x)), zero)
        ) | (
            pj.nihilation
            & delta(1, j - 1, lambda x, y: s.rule(y).added_edges & _not_e(s.rule(x)), zero)
        )
        plus_nodes_j = (
            pj.rhs.nodes
            & nabla(
                j + 1,
                n,
                lambda x, y: complement(s.rule(x).deleted_nodes, ones_v)
                & s.rule(y).added_nodes,
                zero_v,
            )
        ) | (
            pj.lhs.nodes
            & delta(
                1,
                j - 1,
                lambda x, y: s.rule(y).deleted_nodes
                & complement(s.rule(x).added_nodes, ones_v),
                zero_v,
            )
        )
        witnesses.extend(_cells_of(plus_j, "+", j))
        witnesses.extend(_cells_of(minus_j, "-", j))
        witnesses.extend(_nodes_of(plus_nodes_j, "+", j))
        c_plus = c_plus | plus_j
        c_minus = c_minus | minus_j
        c_plus_nodes = c_plus_nodes | plus_nodes_j
    term = ComplexTerm(c_plus, c_plus_nodes, c_minus, zero_v, ones_v)
    return AnalysisReport("coherence", term.is_zero(), term, tuple(witnesses))


def t_matrix(p: Production) -> BoolMatrix:
    """Edges made newly available by a rule's node additions.

    Cells incident to an added node, minus cells incident to a deleted one.
    """
    u = p.universe
    ones_v = BoolVector.ones(u)
    ones_e = BoolMatrix.ones(u)
    kept_after_add = complement(p.added_nodes, ones_v)
    kept_after_del = complement(p.deleted_nodes, ones_v)
    return complement(tensor(kept_after_add, kept_after_add), ones_e) & tensor(
        kept_after_del, kept_after_del
    )


def initial_digraph(s: RuleSequence, check: bool = True) -> ComplexTerm:
    """Smallest host (certainty) and forbidden edges (nihil) firing s.

    Meaningful for coherent sequences; an IncoherentSequenceWarning is
    emitted otherwise and the closed form is still returned.  ``check=False``
    skips the coherence pass for callers that already ran it.
    """
    if check and not coherence(s).ok:
        warnings.warn(
            f"initial digraph of an incoherent sequence [{s.composition_order()}]",
            IncoherentSequenceWarning,
            stacklevel=2,
        )
    n = len(s)
    u = s.universe
    zero_e = BoolMatrix.zeros(u)
    zero_v = BoolVector.zeros(u)
    ones_e = BoolMatrix.ones(u)
    ones_v = BoolVector.ones(u)

    cert_edges = nabla(
        1, n, lambda x, y: _not_r(s.rule(x)) & s.rule(y).lhs.edges, zero_e
    )
    cert_nodes = nabla(
        1,
        n,
        lambda x, y: complement(s.rule(x).added_nodes, ones_v) & s.rule(y).lhs.nodes,
        zero_v,
    )
    nihil_edges = nabla(
        1,
        n,
        lambda x, y: _not_e(s.rule(x))
        & complement(t_matrix(s.rule(x)), ones_e)
        & s.rule(y).nihilation,
        zero_e,
    )
    return ComplexTerm(cert_edges, cert_nodes, nihil_edges, zero_v, ones_v)


def rewrite_term(p: Production, z: ComplexTerm) -> ComplexTerm:
    """Action of a rule on a host term: rewrite certainty, evolve nihil."""
    u = p.universe
    ones_e = BoolMatrix.ones(u)
    ones_v = BoolVector.ones(u)
    return ComplexTerm(
        p.added_edges | (complement(p.deleted_edges, ones_e) & z.cert_edges),
        p.added_nodes | (complement(p.deleted_nodes, ones_v) & z.cert_nodes),
        p.deleted_edges | (complement(p.added_edges, ones_e) & z.nihil_edges),
        z.nihil_nodes,
        z.ambient,
    )


def stepwise_image(s: RuleSequence, start: ComplexTerm | None = None) -> ComplexTerm:
    """Fold the rules of s over a host term (default: the initial digraph)."""
    z = initial_digraph(s) if start is None else start
    for p in s.rules:
        z = rewrite_term(p, z)
    return z


def image_of_sequence(s: RuleSequence) -> ComplexTerm:
    """Closed form of the sequence applied to its own initial digraph."""
    n = len(s)
    u = s.universe
    zero_e = BoolMatrix.zeros(u)
    zero_v = BoolVector.zeros(u)
    ones_v = BoolVector.ones(u)
    m = initial_digraph(s, check=False)

    kept_all_e = zero_e
    kept_all_v = zero_v
    for j, p in enumerate(s.rules):
        not_e = _not_e(p)
        not_ev = complement(p.deleted_nodes, ones_v)
        kept_all_e = not_e if j == 0 else kept_all_e & not_e
        kept_all_v = not_ev if j == 0 else kept_all_v & not_ev
    unadded_all_e = zero_e
    for j, p in enumerate(s.rules):
        not_r = _not_r(p)
        unadded_all_e = not_r if j == 0 else unadded_all_e & not_r

    cert_edges = (
        delta(1, n, lambda x, y: _not_e(s.rule(x)) & s.rule(y).added_edges, zero_e)
        | (kept_all_e & m.cert_edges)
    )
    cert_nodes = (
        delta(
            1,
            n,
            lambda x, y: complement(s.rule(x).deleted_nodes, ones_v)
            & s.rule(y).added_nodes,
            zero_v,
        )
        | (kept_all_v & m.cert_nodes)
    )
    nihil_edges = (
        delta(1, n, lambda x, y: _not_r(s.rule(x)) & s.rule(y).deleted_edges, zero_e)
        | (unadded_all_e & m.nihil_edges)
    )
    return ComplexTerm(cert_edges, cert_nodes, nihil_edges, zero_v, ones_v)


def sequence_compatibility(s: RuleSequence) -> AnalysisReport:
    """The sequence only ever manipulates simple digraphs.

    Two families of defects are collected.  First, for every prefix length
    m, cells simultaneously required and forbidden by the prefix's initial
    digraph and untouched by rule m; these are ORed into the violation
    matrix (the literal one-term reading of that check, whose summand
    depends only on its first index, is reported as an extra).  Second,
    dangling edges: every prefix's smallest host and every intermediate
    image of the full initial digraph must be a proper digraph.
    """
    n = len(s)
    u = s.universe
    zero = BoolMatrix.zeros(u)
    notes: list[str] = []
    incompatible_rules = [p.name for p in s.rules if not p.compatible]
    if incompatible_rules:
        notes.append("incompatible rules: " + " ".join(incompatible_rules))

    prefixes = [initial_digraph(s.prefix(m), check=False) for m in range(1, n + 1)]

    def prefix_clash(m: int) -> BoolMatrix:
        term = prefixes[m - 1]
        pm = s.rule(m)
        return _not_e(pm) & _not_r(pm) & term.cert_edges & term.nihil_edges

    violations = zero
    witnesses: list[Witness] = []
    clashes = [prefix_clash(m) for m in range(1, n + 1)]
    for m, clash in enumerate(clashes, start=1):
        witnesses.extend(_cells_of(clash, "+", m))
        violations = violations | clash
    literal = nabla(1, n, lambda x, y: clashes[x - 1], zero)

    def dangling(term: ComplexTerm) -> BoolMatrix:
        block = tensor(term.cert_nodes, term.cert_nodes)
        return BoolMatrix(u, term.cert_edges.bits & ~block.bits)

    dangling_free = True
    for m, term in enumerate(prefixes, start=1):
        loose = dangling(term)
        if not loose.is_zero():
            dangling_free = False
            notes.append(f"prefix {m} smallest host has dangling edges")
    running = prefixes[-1]
    for m, p in enumerate(s.rules, start=1):
        running = rewrite_term(p, running)
        loose = dangling(running)
        if not loose.is_zero():
            dangling_free = False
            notes.append(f"image after rule {m} has dangling edges")

    ok = violations.is_zero() and not incompatible_rules and dangling_free
    term = _edge_term(u, violations, zero)
    return AnalysisReport(
        "compatibility", ok, term, tuple(witnesses), tuple(notes), (("literal", literal),)
    )


def g_congruence(s: RuleSequence, mode: str = "advance") -> AnalysisReport:
    """Sufficient condition for s and its permutation to share initial digraphs.

    ``advance`` compares s with the permutation applying the last rule
    first; ``delay`` with the one applying the first rule last.  A zero
    term certifies equal initial digraphs (certainty and nihil); a nonzero
    term names the obstructing cells.
    """
    n = len(s)
    if n < 2:
        raise ValueError("congruence needs at least two rules")
    u = s.universe
    zero = BoolMatrix.zeros(u)

    if mode == "advance":
        pivot_pos = n
        lo, hi = 1, n - 1
    elif mode == "delay":
        pivot_pos = 1
        lo, hi = 2, n
    else:
        raise ValueError(f"unknown mode {mode!r}; expected advance or delay")
    pivot = s.rule(pivot_pos)

    plus = pivot.lhs.edges & nabla(
        lo,
        hi,
        lambda x, y: _not_e(s.rule(x))
        & s.rule(y).nihilation
        & (s.rule(y).added_edges | pivot.deleted_edges),
        zero,
    )
    minus = pivot.nihilation & nabla(
        lo,
        hi,
        lambda x, y: _not_r(s.rule(x))
        & s.rule(y).lhs.edges
        & (s.rule(y).deleted_edges | pivot.added_edges),
        zero,
    )
    term = _edge_term(u, plus, minus)
    witnesses = tuple(_cells_of(plus, "+", pivot_pos) + _cells_of(minus, "-", pivot_pos))
    return AnalysisReport(f"congruence-{mode}", term.is_zero(), term, witnesses)


def sequential_independence(s: RuleSequence, perm: str = "advance") -> bool:
    """True iff s and its permutation are interchangeable.

    Requires both orders coherent and compatible and the congruence term
    zero, then verifies (rather than assumes) that both orders rewrite the
    initial digraph to the same image.
    """
    if perm == "advance":
        permuted = s.advanced()
    elif perm == "delay":
        permuted = s.delayed()
    else:
        raise ValueError(f"unsupported permutation {perm!r}; expected advance or delay")

    if not (coherence(s).ok and coherence(permuted).ok):
        return False
    if not (sequence_compatibility(s).ok and sequence_compatibility(permuted).ok):
        return False
    if not g_congruence(s, perm).ok:
        return False
    m = initial_digraph(s, check=False)
    return stepwise_image(s, m).same_parts(stepwise_image(permuted, m))
