"""flatdeck: exact cylinder decompositions of translation surfaces in H(4)."""

from .field import Mat2, Scalar, Vec2, cross, direction_frame, dot, format_scalar, parse_scalar, scalar_sign
from .surface import (
    PolygonSurface,
    StratumSignature,
    ValidationReport,
    apply_matrix,
    area,
    load_surface,
    save_surface,
    stratum,
    surface_from_obj,
    surface_to_obj,
    validate,
)
from .trace import (
    Cylinder,
    Decomposition,
    Direction,
    Inconclusive,
    NotPeriodic,
    SaddleConnection,
    decompose,
    default_budget,
    scan,
    trace_separatrix,
)
from .diagram import (
    CylinderDiagram,
    DiagramParams,
    InvolutionReport,
    ModelTag,
    REFERENCE_DIAGRAMS,
    build_from_diagram,
    canonical_presentation,
    classify_h4hyp,
    diagram_of,
    diagrams_isomorphic,
    involution_check,
)
from .deform import (
    DeformationSpec,
    NotCertifiedError,
    canonical_form,
    cylinder_deform,
    portion,
    portion_by_directions,
    predicted_circumference,
    surfaces_isomorphic,
)
from .homology import (
    ChainComplex,
    ClassVector,
    core_class,
    free_cylinders,
    intersection,
    intersection_form,
    isotropic,
    periods,
    relative_basis,
    span_rank,
    stratum_parallel,
)
from . import corpus

__version__ = "0.1.0"
