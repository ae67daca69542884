"""Weierstrass gap sequences at total inflection points of nodal plane
curves, computed and certified with exact rational arithmetic."""

__version__ = "0.1.0"

from .curvegeom import (
    AtLeast,
    BranchParametrization,
    PlaneCurve,
    ProjectivePoint,
    SingularAuditReport,
    branch_parametrization,
    inflection_order,
    intersection_multiplicity,
    is_ordinary_node,
    singular_locus_audit,
    tangent_line,
)
from .exactmath import (
    ExactMatrix,
    Rational,
    TernaryForm,
    TruncatedSeries,
    UniPoly,
    exact_rank,
    resultant,
    squarefree_part,
    univariate_gcd,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .linsys import (
    CertificationReport,
    GeneralPositionReport,
    LinearSystem,
    NodalConfiguration,
    canonical_adjoints,
    certify_configuration,
    check_general_position,
    classify_table_row,
    gap_sequence_at,
    through_points,
    with_min_multiplicity,
)
from .semigroups import (
    GapSequence,
    NumericalSemigroup,
    TableRowId,
    base_semigroup,
    dominates,
    gaps,
    is_semigroup,
    maximal_family,
    min_system_degree,
    minimal_family,
    table_row,
    weight,
)

__all__ = [
    "AtLeast",
    "BranchParametrization",
    "CertificationReport",
    "ExactMatrix",
    "GapSequence",
    "GeneralPositionReport",
    "KERNEL_BACKEND",
    "LinearSystem",
    "NodalConfiguration",
    "NumericalSemigroup",
    "PlaneCurve",
    "ProjectivePoint",
    "Rational",
    "SingularAuditReport",
    "TableRowId",
    "TernaryForm",
    "TruncatedSeries",
    "UniPoly",
    "base_semigroup",
    "branch_parametrization",
    "canonical_adjoints",
    "certify_configuration",
    "check_general_position",
    "classify_table_row",
    "dominates",
    "exact_rank",
    "gap_sequence_at",
    "gaps",
    "inflection_order",
    "intersection_multiplicity",
    "is_ordinary_node",
    "is_semigroup",
    "maximal_family",
    "min_system_degree",
    "minimal_family",
    "resultant",
    "singular_locus_audit",
    "squarefree_part",
    "table_row",
    "tangent_line",
    "through_points",
    "univariate_gcd",
    "weight",
    "with_min_multiplicity",
]
