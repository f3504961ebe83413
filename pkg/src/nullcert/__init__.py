"""Exact Nullstellensatz certificates with Newton-polytope support control.

The package finds and checks explicit identities 1 = sum g_i f_i (or
p^D = sum g_i f_i) for systems of multivariate polynomials over the
rationals, constrains the cofactor supports by degree or by dilated
lattice polytopes, evaluates the accompanying bound formulas, and provides
an independent Groebner-basis route for cross-checking feasibility.
"""

from .bounds import (
    BoundReport,
    SupportSpec,
    bezout_algdeg_bound,
    bound_cor12,
    bound_cor21,
    bound_cor22,
    bound_main_lemma,
    bound_thm1,
    bound_thm2,
    bound_thm21,
    bound_thm22,
    bound_thm3,
    bound_thm31,
    bound_thm32,
    bound_thm4,
    bound_thm_cm,
)
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    EmptyPlanError,
    EmptyPointSetError,
    NoCertificateWithinBudgetError,
    NonGradedSetError,
    NonHomogeneousError,
    NotOrdinaryPolynomialError,
    NullcertError,
    UnreachableTargetError,
)
from .groebner import (
    GroebnerBasis,
    IdealProfile,
    algebraic_degree_for_lambda,
    buchberger,
    homogenize_ideal,
    ideal_profile,
    membership_certificate,
    normal_form,
    zero_ideal_profile,
)
from .lattice import (
    GradedSet,
    LatticePolytope,
    NormalityReport,
    SimplexSubdivision,
    convex_hull,
    dilate,
    euclidean_volume,
    graded_from_polytope,
    graded_set,
    is_normal,
    lattice_points,
    normalized_volume,
    prism_polytope,
    translate,
    unimodular_subdivision_Pd,
    verify_unimodular_subdivision,
)
from .poly import (
    Polynomial,
    PolySystem,
    add,
    degrees,
    dehomogenize,
    grevlex_key,
    grlex_key,
    homogenize,
    max_degree,
    monomial_shift,
    mul,
    newton_polytope,
    scalar_mul,
    support,
    unmixed_volume,
)
from .solver import (
    Certificate,
    LinearSystem,
    SupportPlan,
    VerificationResult,
    build_system,
    degree_plan,
    minimal_degree_search,
    polytope_plan,
    solve_at,
    solve_polytope,
    solve_with_localizer,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "SupportSpec", "bezout_algdeg_bound", "bound_cor12",
    "bound_cor21", "bound_cor22", "bound_main_lemma", "bound_thm1",
    "bound_thm2", "bound_thm21", "bound_thm22", "bound_thm3", "bound_thm31",
    "bound_thm32", "bound_thm4", "bound_thm_cm",
    "BudgetExceededError", "DimensionMismatchError", "EmptyPlanError",
    "EmptyPointSetError", "NoCertificateWithinBudgetError",
    "NonGradedSetError", "NonHomogeneousError", "NotOrdinaryPolynomialError",
    "NullcertError", "UnreachableTargetError",
    "GroebnerBasis", "IdealProfile", "algebraic_degree_for_lambda",
    "buchberger", "homogenize_ideal", "ideal_profile",
    "membership_certificate", "normal_form", "zero_ideal_profile",
    "GradedSet", "LatticePolytope", "NormalityReport", "SimplexSubdivision",
    "convex_hull", "dilate", "euclidean_volume", "graded_from_polytope",
    "graded_set", "is_normal", "lattice_points", "normalized_volume",
    "prism_polytope", "translate", "unimodular_subdivision_Pd",
    "verify_unimodular_subdivision",
    "Polynomial", "PolySystem", "add", "degrees", "dehomogenize",
    "grevlex_key", "grlex_key", "homogenize", "max_degree", "monomial_shift",
    "mul", "newton_polytope", "scalar_mul", "support", "unmixed_volume",
    "Certificate", "LinearSystem", "SupportPlan", "VerificationResult",
    "build_system", "degree_plan", "minimal_degree_search", "polytope_plan",
    "solve_at", "solve_polytope", "solve_with_localizer",
    "verify_certificate",
    "__version__",
]
