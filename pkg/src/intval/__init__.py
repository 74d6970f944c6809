"""Exact integer-valued valuations on convex bodies in dimensions 1 and 2.

Everything is computed in exact rational arithmetic; no floats anywhere.
"""

from .geom import (
    Cone,
    ConvexBody,
    Direction,
    GeometryError,
    HalfPlane,
    Point,
    clip,
    cone_contains,
    contains,
    intersect,
    normal_cone,
    pt,
    support_value,
)
from .arrangement import Arrangement, Cell, WindowError, build_arrangement
from .valuation import (
    InputError,
    Interval1,
    Representation,
    Term,
    Verdict,
    additivity_probe,
    chi_representation,
    default_window,
    equal,
    evaluate,
    shrink_probe,
    singleton_value,
)
from .admissibility import (
    AdmissibilityReport,
    certify_monotone,
    check_admissible,
    falsify_monotone,
    sweep_probe,
)
from .line import (
    BracketToken,
    Classification,
    Decomposition,
    IntervalTerm,
    LineError,
    StepFunction,
    Valuation1D,
    classify,
    closed_form,
    decompose,
    eval1,
    fg_from_oracle,
    reconstruct,
)
from .structure import (
    ConvexComponentCover,
    CoverIncompleteError,
    StructureError,
    SupportRegion,
    canonicalize,
    convex_components,
    invis_bound_probe,
    invisibility_check,
    support,
    tile_globalize,
)
from .product import (
    chi_oracle,
    product_cg,
    product_eval,
    representation_independence_probe,
)

__version__ = "0.1.0"
