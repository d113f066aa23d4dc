"""Combinatorial machinery of ultragraph algebras, exact and finite.

Vertex-set lattices, ultrapaths and lasso paths, the tight inverse
semigroup, the boundary-path groupoid with its bisections and cylinder
sets, symbolic Cuntz-Krieger families, and the structural criteria that
feed simplicity verdicts.  Everything is decided exactly on finite
ultragraphs at desk scale.
"""

from .analysis import (
    CofinalityReport,
    KReport,
    Loop,
    StructureReport,
    af_indicator,
    check_singular_equivalence,
    condition_2,
    condition_K,
    count_first_return_loops,
    is_cofinal,
    is_loop_free,
    loops_at,
    simplicity_verdict,
    skew_product,
)
from .core import (
    GraphStructureError,
    LatticeG0,
    SizeLimitError,
    Ultragraph,
    ValidationReport,
    edge_adjacency,
    emitted_edges,
    format_set,
    generate_lattice,
    is_infinite_emitter,
    is_ultraset,
    reachable_from,
    reaches,
    reaches_set,
    require_no_sinks,
    validate,
)
from .fileformat import ParseError, emit, emit_file, parse, parse_file
from .fixtures import FIXTURES, gw, gx, gy
from .groupoid import (
    Bisection,
    BoundaryPath,
    CheckReport,
    CheckResult,
    CKFamily,
    CylinderSet,
    EMPTY_BISECTION,
    GroupoidElement,
    bisection_member,
    bisection_product,
    bisection_star,
    build_elements,
    check_bisection_homomorphism,
    check_family,
    check_groupoid_laws,
    check_hausdorff,
    check_orbit_density,
    check_set_identities,
    ck_family,
    compose,
    compute_Y_infinity,
    cylinder_member,
    groupoid_element,
    inverse,
    make_cylinder,
    refine_to_depth,
    refine_words,
    split_through,
    unit_at,
    verify_ck,
)
from .paths import (
    LassoPath,
    Ultrapath,
    comparable,
    concat,
    concat_lasso,
    edge_path,
    enumerate_lassos,
    enumerate_paths,
    initial_segment,
    lasso_source,
    make_lasso,
    make_path,
    path_source,
    shift,
    shift_n,
    strip_lasso,
    unroll,
    vertex_path,
)
from .semigroup import (
    OMEGA,
    OMEGA_CHARACTER,
    Semicharacter,
    SGElement,
    eval_char,
    filter_of,
    generate_elements,
    idempotent,
    idempotent_leq,
    idempotent_leq_by_shape,
    is_idempotent,
    pair,
    product,
    star,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
