"""End-to-end univariate certification.

Order of attack for a nonnegative input:

  1. classify exactly (witness and exit for anything not nonnegative);
  2. semidefinite inputs split off their square factor and recurse on the
     positive definite cofactor, composing the certificates;
  3. positive definite inputs try the minimum-shift reduction (certify the
     inner factor, multiply back, add the shift), then grid search.

Strategy "auto" escalates core_zero -> banded -> full_grid; pure core_zero
provably cannot reach some inputs (the interior coefficients are forced
nonzero), so the escalation is what backs the default CLI path.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from typing import Optional, Union

from .certificate import SosCertificate, compose_with_square, verify, with_constant_added
from .positivity import Definiteness, DefinitenessReport, classify, min_shift_split, square_factor_split
from .solver import (
    Exhausted,
    InfeasibilityWitness,
    Reject,
    SearchConfig,
    SolveOutcome,
    border_solve,
    dense_support,
    search,
)
from .unipoly import UniPoly

CertifyResult = Union[SosCertificate, DefinitenessReport, InfeasibilityWitness, Exhausted]

AUTO_STAGES = ("core_zero", "banded", "full_grid")


def _search_certificate(p: UniPoly, config: SearchConfig) -> CertifyResult:
    support = dense_support(p.degree // 2)
    if config.strategy != "auto":
        outcome = search(p, support, config)
        return outcome.certificate if isinstance(outcome, SolveOutcome) else outcome
    total_tested = 0
    for stage in AUTO_STAGES:
        outcome = search(p, support, replace(config, strategy=stage))
        if isinstance(outcome, SolveOutcome):
            return outcome.certificate
        if isinstance(outcome, InfeasibilityWitness):
            return outcome
        total_tested += outcome.points_tested
    return Exhausted(total_tested, "auto strategies exhausted")


def certify_univariate(
    p: UniPoly,
    config: SearchConfig = SearchConfig(strategy="auto"),
    pin: Optional[tuple] = None,
) -> CertifyResult:
    """Certify p >= 0 with an exact rational SOS, or explain why not.

    ``pin`` short-circuits the search with an explicit (diagonal, core)
    assignment on the dense support.
    """
    if p.is_zero:
        return SosCertificate(Fraction(1), (), Fraction(0), strategy="zero")
    if p.degree == 0:
        c = p.coefficient(0)
        if c < 0:
            return DefinitenessReport(Definiteness.NOT_NONNEGATIVE, 0, Fraction(0))
        return SosCertificate(Fraction(1), (), c, strategy="constant")

    report = classify(p)
    if report.classification is Definiteness.NOT_NONNEGATIVE:
        return report

    if pin is not None:
        diagonal, core = pin
        outcome = border_solve(p, dense_support(p.degree // 2), diagonal, core, strategy="pinned")
        if isinstance(outcome, Reject):
            return Exhausted(1, f"pinned point rejected at t^{outcome.exponent}: {outcome.reason}")
        return outcome.certificate

    if report.classification is Definiteness.POSITIVE_SEMIDEFINITE:
        split = square_factor_split(p)
        inner = certify_univariate(split.definite_part, config)
        if not isinstance(inner, SosCertificate):
            return inner
        cert = compose_with_square(inner, split.square_part)
        if not verify(cert, p):
            raise RuntimeError("internal error: composed certificate failed verification")
        return cert

    # Positive definite: a minimum-shift reduction can knock the degree down
    # (Example-9 style p = g**2 q + m); fall back to direct search.
    shift = min_shift_split(p)
    if shift is not None and shift.m >= 0 and 0 < shift.q.degree < p.degree:
        inner = certify_univariate(shift.q, config)
        if isinstance(inner, SosCertificate):
            cert = with_constant_added(compose_with_square(inner, shift.g), shift.m)
            if not verify(cert, p):
                raise RuntimeError("internal error: shifted certificate failed verification")
            return cert
        # inner search failed; fall through to direct search on p itself

    return _search_certificate(p, config)
