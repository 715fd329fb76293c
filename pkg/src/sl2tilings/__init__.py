"""Exact SL2-tilings: models, wildness analysis, block classes, and search."""

from .blocks import (
    BlockClass,
    RankEntry,
    RankReport,
    canonical_block_form,
    enumerate_block_classes,
    rank_deficiency_report,
)
from .catalog import (
    WILDEST_LATTICE,
    PqrsParams,
    iter_pqrs_params,
    pqrs_det3_spectrum,
    pqrs_tiling,
    unit_tiling,
    wildest_integer_tiling,
    z36_tiling,
)
from .errors import (
    RingMismatchError,
    StructuralError,
    UnsupportedOperationError,
    ValidationError,
)
from .gridio import GridParseError, parse_grid, write_grid
from .matrices import (
    CongruenceSolutions,
    Matrix,
    bareiss_rank,
    corner_det3,
    det,
    det2,
    det3,
    solve_linear_congruence,
)
from .rings import (
    INTEGERS,
    POLYNOMIALS,
    IntegerRing,
    ModularRing,
    PolynomialRing,
    RingValue,
    divexact,
    iter_terms,
    poly_eval,
)
from .search import (
    SearchConfig,
    SearchResult,
    SearchStats,
    block_is_fully_wild,
    block_is_sl2,
    brute_force_oracle,
    canonical_block,
    propagate_cell,
    search_fully_wild,
)
from .svg import RenderOptions, UnverifiedModelError, default_region, render_svg
from .tiling import (
    AuditFinding,
    CellColor,
    DensitySample,
    FormalParameters,
    NumericParameters,
    Patched,
    PeriodicBlock,
    RuleBased,
    SublatticeSpec,
    Violation,
    Window,
    WildnessReport,
    centered_det3,
    classify_entry,
    corner_audit,
    count_nonzero_diagonals,
    dodgson_audit,
    extract_window,
    parameter_index,
    parameter_position,
    verify_sl2,
    verify_window,
    wild_density_exact,
    wild_density_windows,
    wildness_report,
    zero_cross_audit,
)

__version__ = "0.1.0"

__all__ = [
    "AuditFinding",
    "BlockClass",
    "CellColor",
    "CongruenceSolutions",
    "DensitySample",
    "FormalParameters",
    "GridParseError",
    "INTEGERS",
    "IntegerRing",
    "Matrix",
    "ModularRing",
    "NumericParameters",
    "POLYNOMIALS",
    "Patched",
    "PeriodicBlock",
    "PolynomialRing",
    "PqrsParams",
    "RankEntry",
    "RankReport",
    "RenderOptions",
    "RingMismatchError",
    "RingValue",
    "RuleBased",
    "SearchConfig",
    "SearchResult",
    "SearchStats",
    "StructuralError",
    "SublatticeSpec",
    "UnsupportedOperationError",
    "UnverifiedModelError",
    "ValidationError",
    "Violation",
    "WILDEST_LATTICE",
    "WildnessReport",
    "Window",
    "bareiss_rank",
    "block_is_fully_wild",
    "block_is_sl2",
    "brute_force_oracle",
    "canonical_block",
    "canonical_block_form",
    "centered_det3",
    "classify_entry",
    "corner_audit",
    "corner_det3",
    "count_nonzero_diagonals",
    "default_region",
    "det",
    "det2",
    "det3",
    "divexact",
    "dodgson_audit",
    "enumerate_block_classes",
    "iter_terms",
    "extract_window",
    "iter_pqrs_params",
    "parameter_index",
    "parameter_position",
    "parse_grid",
    "poly_eval",
    "pqrs_det3_spectrum",
    "pqrs_tiling",
    "propagate_cell",
    "rank_deficiency_report",
    "render_svg",
    "search_fully_wild",
    "solve_linear_congruence",
    "unit_tiling",
    "verify_sl2",
    "verify_window",
    "wild_density_exact",
    "wild_density_windows",
    "wildest_integer_tiling",
    "wildness_report",
    "write_grid",
    "z36_tiling",
]
