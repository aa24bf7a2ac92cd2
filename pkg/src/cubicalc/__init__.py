"""cubicalc: exact algebra of n-dimensional box unions.

The package keeps every region of n-dimensional space that is a finite union
of axis-aligned boxes (with independently open or closed, possibly infinite
bounds) in a canonical form: the set of all its maximal boxes.  On that form
the full boolean set algebra, cartesian products and projections, the
geometric semantics of lock/unlock (PV) programs, deadlock and attractor
analyses, and an executable suite of the algebra's tensor-style laws are
provided, all in exact rational arithmetic.
"""

from ._rat import Q, rat
from .intervals import (
    EMPTY_1D,
    FULL_1D,
    FULL_LINE,
    Endpoint,
    Interval,
    OneDimArea,
    area1d_complement,
    area1d_normalize,
    area1d_union,
    interval,
    interval_complement,
    interval_from_json,
    interval_intersect,
    interval_merge,
    interval_to_json,
    point,
)
from .areas import (
    Cube,
    CubeFamily,
    CubicalArea,
    area_complement,
    area_equal,
    area_from_cubes,
    area_from_json,
    area_intersect,
    area_to_json,
    area_to_one_dim,
    area_union,
    contains_point,
    cube_complement,
    cube_intersect,
    empty_area,
    family_refines,
    full_area,
    full_cube,
    interval_to_area,
    normalize,
    one_dim_to_area,
    product,
    product_interleaved,
    project,
)
from .pv import (
    Action,
    HoldInterval,
    Process,
    PvError,
    PvProgram,
    PvSyntaxError,
    PvValidationError,
    ambient,
    ambient_area,
    forbidden_region,
    model,
    parse,
    resource_groups,
    subprogram,
    validate,
)
from .analysis import (
    AnalysisReport,
    CellDecomposition,
    GridOracle,
    analyze,
    build_cells,
    doomed_region,
    factorize,
    find_deadlocks,
    grid_oracle,
    report_to_json,
)
from .laws import (
    Bimorphism,
    FiniteSemilatticeZ,
    LawSuiteReport,
    check_boolean_laws,
    check_cover_invariance,
    check_generator_complement,
    check_generator_meet,
    embedding_bimorphism,
    extend_bimorphism,
    hyperplane_refinement,
    random_area,
    run_law_suite,
    sample_bimorphism,
    spot_check_bimorphism,
)

__version__ = "0.1.0"
