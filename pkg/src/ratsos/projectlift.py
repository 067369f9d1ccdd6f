"""Multivariate certificates by projection to one variable and lifting back.

Project: substitute x_i -> t**k_i with k_1 = 1 and
k_{i+1} = 1 + deg_t p(x_1=t**k_1, ..., x_i=t**k_i), which makes the
monomial -> power map injective on the support.  The power selection
procedure proposes a small square support for the projected polynomial, the
triangular solver runs on it, and the successive remainder computation
(digit decomposition by the k_i) lifts every square back.  Lifting is not
sound by construction, so the lifted identity is re-verified exactly and a
failure is an error, never a silently wrong certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .certificate import SosCertificate, verify
from .multipoly import MultiPoly, grlex_key
from .solver import (
    Exhausted,
    InfeasibilityWitness,
    Reject,
    SearchConfig,
    SolveOutcome,
    SupportSet,
    border_solve,
    search,
)
from .unipoly import UniPoly


@dataclass(frozen=True)
class PowerMap:
    """Substitution exponents k_1 < k_2 < ... < k_n, k_1 = 1."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(int(k) for k in self.exponents)
        object.__setattr__(self, "exponents", ks)
        if not ks or ks[0] != 1:
            raise ValueError("power map must start with k_1 = 1")
        if any(a >= b for a, b in zip(ks, ks[1:])):
            raise ValueError("power map must strictly increase")


@dataclass(frozen=True)
class HalfSupport:
    """The candidate half-support N (exponent vectors of the squares)."""

    vectors: frozenset[tuple[int, ...]]
    leftovers: frozenset[tuple[int, ...]]  # empty on success


class SupportSelectionStuck(ValueError):
    def __init__(self, monomial: tuple[int, ...]):
        self.monomial = monomial
        super().__init__(f"support selection stuck: no dominated half-vector for {monomial}")


class LiftError(ValueError):
    def __init__(self, monomial, expected: Fraction, got: Fraction):
        self.monomial = monomial
        self.expected = expected
        self.got = got
        super().__init__(
            f"lifted identity mismatch at {monomial}: expected {expected}, got {got}"
        )


def power_sequence(p: MultiPoly) -> PowerMap:
    """k_1 = 1; k_{i+1} = 1 + max over monomials of sum_{j<=i} k_j d_j.

    The resulting map is injective on p's support (checked; a failure would
    indicate a bookkeeping bug, not bad input).
    """
    if p.is_zero:
        raise ValueError("power sequence of zero polynomial")
    n = len(p.variables)
    ks = [1]
    for i in range(1, n):
        partial = max(sum(k * d for k, d in zip(ks, exps[:i])) for exps in p.terms)
        ks.append(1 + partial)
    images = {sum(k * d for k, d in zip(ks, exps)) for exps in p.terms}
    if len(images) != len(p.terms):
        raise ValueError("power sequence failed to separate the support")
    return PowerMap(tuple(ks))


def power_selection(p: MultiPoly, k: PowerMap) -> SupportSet:
    """Candidate square support for the projection of p.

    Seeds N with the halves of all-even exponent vectors; every remaining
    support vector m, taken in graded-lex order, must be dominated by some
    v in N with smaller total degree, and contributes every difference m - v.
    """
    if p.is_zero:
        raise ValueError("power selection of zero polynomial")
    half: set[tuple[int, ...]] = set()
    rest: list[tuple[int, ...]] = []
    for exps in p.terms:
        if all(d % 2 == 0 for d in exps):
            half.add(tuple(d // 2 for d in exps))
        else:
            rest.append(exps)
    for m in sorted(rest, key=grlex_key):
        snapshot = sorted(half, key=grlex_key)
        total_m = sum(m)
        dominated = [
            v
            for v in snapshot
            if sum(v) < total_m and all(dv <= dm for dv, dm in zip(v, m))
        ]
        if not dominated:
            raise SupportSelectionStuck(m)
        for v in dominated:
            half.add(tuple(dm - dv for dm, dv in zip(m, v)))
    powers = {sum(ki * li for ki, li in zip(k.exponents, vec)) for vec in half}
    return SupportSet(tuple(sorted(powers)))


def half_support(p: MultiPoly, k: PowerMap) -> HalfSupport:
    """The N / M sets of the selection loop, for inspection."""
    half: set[tuple[int, ...]] = set()
    rest: set[tuple[int, ...]] = set()
    for exps in p.terms:
        if all(d % 2 == 0 for d in exps):
            half.add(tuple(d // 2 for d in exps))
        else:
            rest.add(exps)
    leftovers: set[tuple[int, ...]] = set()
    for m in sorted(rest, key=grlex_key):
        snapshot = sorted(half, key=grlex_key)
        total_m = sum(m)
        dominated = [
            v for v in snapshot if sum(v) < total_m and all(dv <= dm for dv, dm in zip(v, m))
        ]
        if not dominated:
            leftovers.add(m)
            continue
        for v in dominated:
            half.add(tuple(dm - dv for dm, dv in zip(m, v)))
    return HalfSupport(frozenset(half), frozenset(leftovers))


def inverse_kronecker(g: UniPoly, k: PowerMap, variables: Sequence[str]) -> MultiPoly:
    """Successive remainder computation: t**e -> x_1**d_1 ... x_n**d_n.

    Digits are peeled most significant first: d_n = e // k_n, the remainder
    continues with k_{n-1}, and k_1 = 1 absorbs whatever is left.
    """
    variables = tuple(variables)
    ks = k.exponents
    if len(variables) != len(ks):
        raise ValueError("one variable per substitution power required")
    terms: dict[tuple[int, ...], Fraction] = {}
    for e, c in enumerate(g.coeffs):
        if c == 0:
            continue
        rem = e
        digits = [0] * len(ks)
        for idx in range(len(ks) - 1, -1, -1):
            digits[idx], rem = divmod(rem, ks[idx])
        key = tuple(digits)
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(variables, terms)


def lift_certificate(
    cert: SosCertificate,
    k: PowerMap,
    variables: Sequence[str],
    target: MultiPoly,
) -> SosCertificate:
    """Lift a univariate certificate through the inverse substitution.

    The lift is verified against ``target`` by exact expansion; the first
    differing coefficient is reported on failure.
    """
    lifted_terms = []
    for mult, q in cert.terms:
        if not isinstance(q, UniPoly):
            raise ValueError("lift expects univariate square terms")
        lifted_terms.append((mult, inverse_kronecker(q, k, variables)))
    lifted = SosCertificate(
        scale=cert.scale,
        terms=tuple(lifted_terms),
        constant=cert.constant,
        support=cert.support,
        strategy=f"lift({cert.strategy})" if cert.strategy else "lift",
    )
    from .certificate import expand

    got = expand(lifted, like=target)
    if got != target:
        diff = got - target
        exps, coeff = diff.sorted_terms()[0]
        return _raise_lift_error(target, exps, coeff)
    return lifted


def _raise_lift_error(target: MultiPoly, exps, coeff):
    expected = target.coefficient(exps)
    raise LiftError(exps, expected, expected + coeff)


def certify_multivariate(
    p: MultiPoly,
    config: SearchConfig = SearchConfig(),
    pin: Optional[tuple] = None,
    return_trace: bool = False,
):
    """Project, select a support, solve, lift, and re-verify.

    Returns SosCertificate | InfeasibilityWitness | Exhausted (wrapped with
    the stage trace when ``return_trace``).  ``pin`` fixes the (diagonal,
    core) assignment of the univariate solve instead of searching.
    """
    k = power_sequence(p)
    projected = p.substitute_powers(k.exponents)
    support = power_selection(p, k)

    def finish(result):
        return (result, k, projected, support) if return_trace else result

    if pin is not None:
        diagonal, core = pin
        outcome = border_solve(projected, support, diagonal, core, strategy="pinned")
        if isinstance(outcome, Reject):
            return finish(
                Exhausted(1, f"pinned point rejected at t^{outcome.exponent}: {outcome.reason}")
            )
    else:
        outcome = search(projected, support, config)
        if not isinstance(outcome, SolveOutcome):
            return finish(outcome)
    lifted = lift_certificate(outcome.certificate, k, p.variables, p)
    if not verify(lifted, p):  # lift_certificate already checked; belt and braces
        raise RuntimeError("internal error: lifted certificate failed verification")
    return finish(lifted)
