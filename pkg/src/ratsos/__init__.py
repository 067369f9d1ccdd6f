"""Exact rational sum-of-squares certificates.

Decides positive (semi)definiteness of rational univariate polynomials and
constructs machine-verified SOS certificates whose data are entirely
rational; multivariate inputs go through projection to one variable and a
verified lift back.
"""

from .certificate import (
    SosCertificate,
    compose_with_square,
    expand,
    expand_square_sum,
    two_squares_product,
    verify,
    with_constant_added,
)
from .gram import GramMatrix, LdlResult, NotPsd, certificate_to_gram, gram_to_certificate, ldl
from .multipoly import MultiPoly
from .parsing import (
    ParseDiagnostic,
    ParseError,
    parse_certificate,
    parse_poly,
    parse_rational,
    parse_unipoly,
    render_certificate,
)
from .pipeline import certify_univariate
from .positivity import (
    Definiteness,
    DefinitenessReport,
    ShiftSplit,
    SquareSplit,
    classify,
    min_shift_split,
    rational_minimum,
    square_factor_split,
    squarefree_decomposition,
    sturm_count,
)
from .projectlift import (
    HalfSupport,
    LiftError,
    PowerMap,
    SupportSelectionStuck,
    certify_multivariate,
    inverse_kronecker,
    lift_certificate,
    power_selection,
    power_sequence,
)
from .solver import (
    Exhausted,
    InfeasibilityWitness,
    Reject,
    SearchConfig,
    SolveOutcome,
    SupportSet,
    TriangularScheme,
    border_solve,
    delta,
    dense_support,
    diagonal_contradiction,
    search,
    search_all,
)
from .unipoly import UniPoly, div_rem, gcd

__all__ = [
    "Definiteness",
    "DefinitenessReport",
    "Exhausted",
    "GramMatrix",
    "HalfSupport",
    "InfeasibilityWitness",
    "LdlResult",
    "LiftError",
    "MultiPoly",
    "NotPsd",
    "ParseDiagnostic",
    "ParseError",
    "PowerMap",
    "Reject",
    "SearchConfig",
    "ShiftSplit",
    "SolveOutcome",
    "SosCertificate",
    "SquareSplit",
    "SupportSelectionStuck",
    "SupportSet",
    "TriangularScheme",
    "UniPoly",
    "border_solve",
    "certificate_to_gram",
    "certify_multivariate",
    "certify_univariate",
    "classify",
    "compose_with_square",
    "delta",
    "dense_support",
    "diagonal_contradiction",
    "div_rem",
    "expand",
    "expand_square_sum",
    "gcd",
    "gram_to_certificate",
    "inverse_kronecker",
    "ldl",
    "lift_certificate",
    "min_shift_split",
    "parse_certificate",
    "parse_poly",
    "parse_rational",
    "parse_unipoly",
    "power_selection",
    "power_sequence",
    "rational_minimum",
    "render_certificate",
    "search",
    "search_all",
    "square_factor_split",
    "squarefree_decomposition",
    "sturm_count",
    "two_squares_product",
    "verify",
    "with_constant_added",
]
