"""Transgression forms for characteristic classes on associated bundles.

Exact rational coefficient families, matrix Lie algebra splits, invariant
polynomials, point-evaluated exterior calculus, principal-bundle chart
models, and a bundle zoo with numerical verification of the transgression
identities d TP = P(Omega) and d PhiP = P(Omega) - P(Psi).
"""

from .rationals import (
    CoefficientTable,
    ConsistencyError,
    build_table_by_recursion,
    cs_coefficient,
    fiber_constant,
    phi_coefficient,
    verify_linear_relations,
)
from .liealg import (
    LieAlgebraElement,
    MatrixLieAlgebra,
    QuaternionicStructures,
    ReductiveSplit,
    bracket,
    quaternionic_frame_structures,
    so,
    so4_ideal_split,
    standard_split,
    su,
    u,
)
from .invariants import (
    InvariantPolynomial,
    eval_on_forms,
    invariance_identity_residual,
    make_polynomial,
    pfaffian,
    polarize_eval,
)
from .calculus import (
    ChartMap,
    FormField,
    ParametrizedChain,
    bracket_wedge,
    exterior_derivative,
    integrate,
    pullback,
    wedge,
)
from .bundles import (
    BundleChart,
    FiberModel,
    Section,
    connection_on_total_space,
    curvature_on_total_space,
    decompose,
    covariant_derivative_residual,
    fiber_integral,
    heterotic_residual,
    obstruction_identity_check,
    phi_p_form,
    psi_curvature,
    tp_form,
)
from .zoo import (
    NamedBundle,
    PrecisionError,
    flat_bundle,
    frame_bundle_s4,
    get_bundle,
    hopf_u1,
    quaternionic_section_degrees,
    twisted_u2,
    unit_tangent_s2,
    winding_degree,
)

__version__ = "0.1.0"
