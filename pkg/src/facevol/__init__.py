"""Exact-arithmetic certificates for simplex face volumes.

The package certifies, over the rationals with no rounding anywhere in the
certification path, that the squared codimension-2 face volumes of an
n-simplex have a full-rank Jacobian in the squared edge lengths (so the face
volumes are algebraically independent functions of the edge lengths), and
derives the complete spectrum of the face-edge incidence structure along the
way. Stated closed-form constants are audited against the certified values
and disagreements are reported, never assumed away.
"""

__version__ = "0.1.0"

from .claims import ClaimRecord
from .exceptions import IntegrityError
from .gelfand import (
    EigenvectorMatch,
    GelfandReport,
    OrbitalMatrices,
    check_commutative,
    eigenspace_dimensions,
    gelfand_report,
    match_eigenvectors,
    orbital_matrices,
)
from .geometry import (
    EdgeLengthAssignment,
    all_codim2_squared_volumes,
    cayley_menger_matrix,
    is_nondegenerate,
    squared_volume,
    unit_regular_squared_volume,
)
from .jacobian import (
    IndependenceCertificate,
    d_sqvol_d_sqlen,
    fd_crosscheck,
    independence_certificate,
    jacobian_squared_map,
    scaled_jacobian_at_regular,
)
from .linalg import (
    Polynomial,
    RationalMatrix,
    char_poly,
    det_fraction_free,
    eigen_multiplicity,
    exact_sqrt,
    format_rational,
    parse_rational,
    poly_divides,
    rank,
)
from .report import (
    CheckResult,
    RunConfig,
    VerificationReport,
    parse_report,
    report_from_dict,
    report_to_dict,
    run_verification,
    serialize_report,
    serialize_reports,
    verify_single,
)
from .spectral import (
    DivisorQuotient,
    EigenvalueWitness,
    SingularValueEntry,
    SpectrumCertificate,
    build_gram,
    check_equitable,
    det_incidence,
    divisor_closed_form,
    divisor_divides,
    divisor_eigenpairs,
    divisor_matrix,
    full_spectrum,
)
from .subsets import (
    build_incidence_matrix,
    intersection_class,
    orbit_partition,
    rank_subset,
    subsets_colex,
    unrank_subset,
)

__all__ = [
    "ClaimRecord",
    "IntegrityError",
    "EigenvectorMatch",
    "GelfandReport",
    "OrbitalMatrices",
    "check_commutative",
    "eigenspace_dimensions",
    "gelfand_report",
    "match_eigenvectors",
    "orbital_matrices",
    "EdgeLengthAssignment",
    "all_codim2_squared_volumes",
    "cayley_menger_matrix",
    "is_nondegenerate",
    "squared_volume",
    "unit_regular_squared_volume",
    "IndependenceCertificate",
    "d_sqvol_d_sqlen",
    "fd_crosscheck",
    "independence_certificate",
    "jacobian_squared_map",
    "scaled_jacobian_at_regular",
    "Polynomial",
    "RationalMatrix",
    "char_poly",
    "det_fraction_free",
    "eigen_multiplicity",
    "exact_sqrt",
    "format_rational",
    "parse_rational",
    "poly_divides",
    "rank",
    "CheckResult",
    "RunConfig",
    "VerificationReport",
    "parse_report",
    "report_from_dict",
    "report_to_dict",
    "run_verification",
    "serialize_report",
    "serialize_reports",
    "verify_single",
    "DivisorQuotient",
    "EigenvalueWitness",
    "SingularValueEntry",
    "SpectrumCertificate",
    "build_gram",
    "check_equitable",
    "det_incidence",
    "divisor_closed_form",
    "divisor_divides",
    "divisor_eigenpairs",
    "divisor_matrix",
    "full_spectrum",
    "build_incidence_matrix",
    "intersection_class",
    "orbit_partition",
    "rank_subset",
    "subsets_colex",
    "unrank_subset",
]
