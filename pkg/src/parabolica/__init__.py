"""Affine geometric structure of the graph surface of a bivariate polynomial.

Exact polynomial core, Hessian-curve topology, asymptotic direction fields,
their extension to the Poincare sphere with half-integer indices, godron
detection, and verification of the index-sum identity and godron bounds.
"""

from .polynomial import (
    BivariatePoly,
    TrivariateHomogeneousPoly,
    UnivariatePoly,
    DegreeError,
    ZeroPolynomialError,
    hessian,
    homogeneous_decomposition,
    projective_hessian,
)
from .rootfind import real_roots, solve_system, distinct_real_linear_factors
from .classify import (
    PointClass,
    HomKind,
    classify_point,
    classify_infinity,
    homogeneous_class,
    compactness_verdict,
)
from .topology import (
    CurveComponent,
    CurveTopology,
    trace_curve,
    projective_topology,
    petrowsky_check,
)
from .asymptotic import (
    DirectionP1,
    Godron,
    Tangency,
    asymptotic_directions,
    integrate_asymptotic_curve,
    tangency_polynomial,
    find_godrons,
)
from .sphere import (
    EdlaForm,
    InfinitySingularPoint,
    edla,
    chart_form,
    singular_points_at_infinity,
    line_field_index,
    arnold_index,
    appendix_linearization,
    projective_index,
    index_at_infinity,
)
from .report import (
    StructureReport,
    PreconditionRefusal,
    verify_index_identity,
    bound_checks,
    full_report,
    to_jsonable,
)
from .parsing import ParseError, parse_polynomial
from .svgplot import Layer, PlotSpec, build_figure, figure_svg, emit_svg

__version__ = "0.1.0"
