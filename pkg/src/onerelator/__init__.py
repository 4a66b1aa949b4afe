"""Symbolic analysis of one-relator group presentations.

Free-group word algebra, Nielsen/Whitehead automorphisms, Brown's
fibering criterion, Moldavansky HNN splittings with monodromy
extraction, abelianization certificates, and the 1-relator hierarchy.
"""

__version__ = "0.1.0"

from .words import (
    CyclicWord,
    ParseError,
    Word,
    canonical_cyclic,
    concat,
    cyclically_reduce,
    exponent_sum,
    format_word,
    invert,
    is_conjugate,
    occurrence_count,
    parse_word,
    reduce,
)
from .automorphisms import (
    Automorphism,
    Endomorphism,
    IntegralCharacter,
    apply,
    character_apply,
    compose,
    is_primitive,
    nielsen_invert,
    nielsen_multiply,
    normalize_character,
    proper_free_factor,
    pullback,
    whitehead_minimize,
)
from .presentations import (
    AbelianInvariants,
    OneRelatorPresentation,
    Presentation,
    abelianization,
    apply_automorphism,
    destabilize,
    element_order_in_h1,
    format_presentation,
    parse_presentation,
    relators_equivalent,
    stabilize,
)
from .rewriting import (
    FG_KERNEL,
    NOT_FG_KERNEL,
    UNIQUE_MAX_REPEATED_MIN,
    UNIQUE_MIN_REPEATED_MAX,
    FiberingReport,
    HnnSplitting,
    MappingTorusData,
    YLetter,
    YWord,
    brown_test,
    canonical_vanishing_character,
    mapping_torus,
    moldavansky_split,
    non_manifold_certificate,
    y_expand,
    y_rewrite,
)
from .hierarchy import (
    BudgetExhausted,
    Hierarchy,
    HierarchyStep,
    build_hierarchy,
    find_hierarchy_discrepancy,
    hierarchy_step,
    verify_hierarchy,
)
