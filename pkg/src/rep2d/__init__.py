"""Repetitiveness measures and compressed representations for 2D strings."""

from .grid import (
    BorderOrder,
    Grid2D,
    GridError,
    Rect,
    from_rows,
    gen_ak,
    gen_bordered_identity,
    gen_cm_lemma4,
    gen_identity,
    hcat,
    new_grid,
    parse_grid,
    rlin,
    serialize_grid,
    subgrid,
    vcat,
)
from .complexity import ComplexityTable, Ratio, complexity_table, delta2d, delta_1d, delta_square, p_exact
from .attractor import (
    AttractorSet,
    CoverageReport,
    greedy_attractor,
    is_attractor,
    is_attractor_1d,
    min_attractor_exact,
)
from .grammar import (
    GrammarError,
    GrammarStats,
    Slp2D,
    access,
    build_quadtree_slp,
    expand,
    grammar_tree_node_count,
    rlslp_zeros,
    slp_ak,
    slp_bordered_identity,
    stats,
    validate,
)
from .macro import (
    Copy,
    Explicit,
    MacroScheme2D,
    SchemeError,
    decode,
    min_scheme_exact,
    rlslp_to_macro,
    scheme_ak,
    scheme_identity,
    validate_scheme,
)

__version__ = "0.1.0"
