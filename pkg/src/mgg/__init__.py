"""Matrix graph grammars over Boolean adjacency matrices.

Simple digraphs and rewriting rules are Boolean matrices and vectors;
rules carry an explicit forbidden-edge (nihilation) matrix, encode into
complex terms and dyadic rationals, and whole rule sequences admit exact
coherence, initial-digraph, image, compatibility and congruence analyses,
each validated by brute-force oracles at small sizes.
"""

from .boolmat import (
    BoolMatrix,
    BoolVector,
    Digraph,
    NodeUniverse,
    UniverseMismatchError,
    bounded_one,
    complement,
    complete_to,
    contains,
    elementwise,
    is_compatible,
    tensor,
)
from .derivation import (
    DerivationError,
    DerivationStep,
    DerivationTrace,
    Match,
    MatchError,
    apply_at,
    derive,
    derive_all,
    find_matches,
    host_complement,
)
from .encoding import (
    Bitmap,
    Dyadic,
    DyadicComplex,
    conditional_norm,
    distance,
    ell,
    ell_complex,
    gasket_raster,
    h_points,
    norm,
)
from .grammar import GrammarError, GrammarFile, parse_grammar, serialize_grammar
from .mcl import (
    ComplexTerm,
    align_terms,
    cadd,
    cmul,
    conj,
    dot,
    equivalent,
    is_orthogonal,
    is_self_adjoint,
    nil_term,
    pmma_normalize,
)
from .oracle import (
    OracleReport,
    applies_at_identity,
    brute_matches,
    census_bruteforce,
    minimal_hosts,
    pascal_mod2,
    random_digraph,
    random_production,
    random_sequence,
)
from .production import (
    CensusTable,
    Production,
    Swap,
    apply_production,
    apply_swap,
    evolve_nihil,
    nihilation,
    p_operator,
    production_compatible,
    swap_census,
)
from .sequence import (
    AnalysisReport,
    IncoherentSequenceWarning,
    RuleSequence,
    Witness,
    coherence,
    delta,
    g_congruence,
    image_of_sequence,
    initial_digraph,
    nabla,
    rewrite_term,
    sequence_compatibility,
    sequential_independence,
    stepwise_image,
    t_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
