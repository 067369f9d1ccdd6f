"""Positive (semi)definiteness of univariate rational polynomials.

Everything here is exact: Sturm chains over Q decide real-root counts, a
bisection on the chain produces rational witnesses of negativity, and Yun's
squarefree decomposition extracts the square factor that Theorem-2-style
composition needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .unipoly import UniPoly, div_rem, gcd


class Definiteness(Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemiDefinite"
    NOT_NONNEGATIVE = "NotNonnegative"


@dataclass(frozen=True)
class DefinitenessReport:
    classification: Definiteness
    real_root_count: int
    witness: Optional[Fraction] = None  # point with p(witness) < 0, iff NotNonnegative


@dataclass(frozen=True)
class SquareSplit:
    """p == square_part**2 * definite_part with definite_part positive definite."""

    square_part: UniPoly
    definite_part: UniPoly


@dataclass(frozen=True)
class ShiftSplit:
    """p == g**2 * q + m exactly."""

    g: UniPoly
    q: UniPoly
    m: Fraction


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Signed remainder chain of (p, p').

    Every element is divided by its (positive) content, which rescales
    without changing any sign and keeps coefficient growth in check.
    """
    chain = [p.primitive()]
    d = p.derivative()
    if not d.is_zero:
        chain.append(d.primitive())
        while True:
            _, r = div_rem(chain[-2], chain[-1])
            if r.is_zero:
                break
            chain.append((-r).primitive())
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_at(p: UniPoly, x) -> int:
    # x is a Fraction, or None for +infinity, or the string "-inf" sentinel.
    if p.is_zero:
        return 0
    if x is _NEG_INF:
        return _sign(p.leading_coefficient) * (-1 if p.degree % 2 else 1)
    if x is _POS_INF:
        return _sign(p.leading_coefficient)
    return _sign(p.eval(x))


_NEG_INF = object()
_POS_INF = object()


def _variations(chain: list[UniPoly], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _deflate_root(p: UniPoly, r: Fraction) -> UniPoly:
    """Divide out every (x - r) factor."""
    lin = UniPoly([-r, 1])
    while not p.is_zero and p.eval(r) == 0:
        p, rem = div_rem(p, lin)
        assert rem.is_zero
    return p


def sturm_count(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in (lo, hi].

    ``None`` endpoints mean -infinity / +infinity.  Repeated roots are
    counted once (the chain terminates at gcd(p, p')); endpoint roots are
    handled exactly by deflation.
    """
    if p.is_zero:
        raise ValueError("sturm_count of zero polynomial")
    if lo is not None and hi is not None and Fraction(lo) >= Fraction(hi):
        return 0
    q = p
    if lo is not None:
        q = _deflate_root(q, Fraction(lo))  # roots at lo are excluded anyway
    root_at_hi = 0
    if hi is not None and not q.is_zero and q.eval(Fraction(hi)) == 0:
        root_at_hi = 1
        q = _deflate_root(q, Fraction(hi))
    if q.degree <= 0:
        return root_at_hi
    chain = sturm_chain(q)
    a = _NEG_INF if lo is None else Fraction(lo)
    b = _POS_INF if hi is None else Fraction(hi)
    return _variations(chain, a) - _variations(chain, b) + root_at_hi


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """B with every real root of p strictly inside (-B, B)."""
    lead = abs(p.leading_coefficient)
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lead + 1


# ---------------------------------------------------------------------------
# Squarefree structure
# ---------------------------------------------------------------------------


def squarefree_decomposition(p: UniPoly) -> tuple[Fraction, list[tuple[UniPoly, int]]]:
    """Yun decomposition p == unit * prod f_i**i with monic squarefree f_i.

    The f_i are pairwise coprime; factors of multiplicity i appear once with
    exponent i.  Exact over Q.
    """
    if p.is_zero:
        raise ValueError("squarefree decomposition of zero polynomial")
    unit = p.leading_coefficient
    p = p.monic()
    if p.degree == 0:
        return unit, []
    dp = p.derivative()
    a = gcd(p, dp)
    if a.degree == 0:
        return unit, [(p, 1)]
    b, _ = div_rem(p, a)
    c, _ = div_rem(dp, a)
    d = c - b.derivative()
    factors: list[tuple[UniPoly, int]] = []
    i = 1
    while b.degree > 0:
        f = b.monic() if d.is_zero else gcd(b, d)
        if f.degree > 0:
            factors.append((f, i))
        b, _ = div_rem(b, f)
        c, _ = div_rem(d, f)
        d = c - b.derivative()
        i += 1
    return unit, factors


def _radical(factors: list[tuple[UniPoly, int]]) -> UniPoly:
    out = UniPoly.constant(1)
    for f, _ in factors:
        out = out * f
    return out


def _odd_part(unit: Fraction, factors: list[tuple[UniPoly, int]]) -> UniPoly:
    out = UniPoly.constant(unit)
    for f, mult in factors:
        if mult % 2:
            out = out * f
    return out


# ---------------------------------------------------------------------------
# Classification and witnesses
# ---------------------------------------------------------------------------


def _probe_outward(p: UniPoly) -> Fraction:
    # p tends to -infinity in at least one direction; walk outward.
    t = Fraction(1)
    while True:
        if p.eval(t) < 0:
            return t
        if p.eval(-t) < 0:
            return -t
        t *= 2


def _nonroot_between(radical: UniPoly, a: Fraction, b: Fraction) -> Fraction:
    # Some point of (a, b) avoiding the finitely many roots of radical.
    k = 2
    while True:
        m = a + (b - a) / k
        if radical.eval(m) != 0:
            return m
        k += 1


def _negative_witness(p: UniPoly, odd_part: UniPoly, radical: UniPoly) -> Fraction:
    """A rational point where p < 0, given that odd_part has a real root."""
    if p.degree % 2 == 1 or p.leading_coefficient < 0:
        return _probe_outward(p)
    bound = cauchy_root_bound(p)
    a, b = -bound, bound
    # Invariant: (a, b] holds >= 1 root of odd_part; a, b are non-roots of p.
    while True:
        if p.eval(a) < 0:
            return a
        if p.eval(b) < 0:
            return b
        m = _nonroot_between(radical, a, b)
        if sturm_count(odd_part, a, m) >= 1:
            b = m
        else:
            a = m
        # Once (a, b) isolates a single root of p, and that root flips the
        # sign of p (odd multiplicity), one endpoint evaluates negative.


def classify(p: UniPoly) -> DefinitenessReport:
    """Exact definiteness decision with a rational negativity witness."""
    if p.is_zero:
        raise ValueError("classify of zero polynomial")
    if p.degree == 0:
        c = p.coefficient(0)
        if c > 0:
            return DefinitenessReport(Definiteness.POSITIVE_DEFINITE, 0)
        return DefinitenessReport(Definiteness.NOT_NONNEGATIVE, 0, Fraction(0))
    if p.degree % 2 == 1 or p.leading_coefficient < 0:
        witness = _probe_outward(p)
        unit, factors = squarefree_decomposition(p)
        nroots = sturm_count(_radical(factors))
        return DefinitenessReport(Definiteness.NOT_NONNEGATIVE, nroots, witness)
    unit, factors = squarefree_decomposition(p)
    radical = _radical(factors)
    nroots = sturm_count(radical)
    odd = _odd_part(unit, factors)
    if odd.degree > 0 and sturm_count(odd) > 0:
        witness = _negative_witness(p, odd, radical)
        assert p.eval(witness) < 0
        return DefinitenessReport(Definiteness.NOT_NONNEGATIVE, nroots, witness)
    if nroots > 0:
        return DefinitenessReport(Definiteness.POSITIVE_SEMIDEFINITE, nroots)
    return DefinitenessReport(Definiteness.POSITIVE_DEFINITE, 0)


def square_factor_split(p: UniPoly) -> SquareSplit:
    """Split a nonnegative p as s**2 * p1 with p1 positive definite.

    s collects floor(multiplicity/2) powers of every repeated factor, so p1
    is the (squarefree) odd-multiplicity part; for p >= 0 it has no real
    roots.  Raises if p is not nonnegative.
    """
    report = classify(p)
    if report.classification is Definiteness.NOT_NONNEGATIVE:
        raise ValueError("square_factor_split requires a nonnegative polynomial")
    unit, factors = squarefree_decomposition(p)
    s = UniPoly.constant(1)
    for f, mult in factors:
        if mult >= 2:
            s = s * f ** (mult // 2)
    p1 = _odd_part(unit, factors)
    return SquareSplit(s, p1)


# ---------------------------------------------------------------------------
# Minimum shift
# ---------------------------------------------------------------------------


def simplest_rational_between(a: Fraction, b: Fraction) -> Fraction:
    """The unique smallest-denominator rational in the open interval (a, b)."""
    if not a < b:
        raise ValueError("empty interval")
    if a < 0 < b:
        return Fraction(0)
    if b <= 0:
        return -simplest_rational_between(-b, -a)
    if a < 0:  # pragma: no cover - covered by the zero case above
        return Fraction(0)
    n = a.numerator // a.denominator
    if a < n + 1 < b:
        return Fraction(n + 1)
    fa, fb = a - n, b - n
    if fa == 0:
        # simplest in (0, fb) is 1/k for the smallest valid k
        k = (1 / fb).numerator // (1 / fb).denominator + 1
        return n + Fraction(1, k)
    return n + 1 / simplest_rational_between(1 / fb, 1 / fa)


def rational_minimum(
    p: UniPoly, max_denominator: int = 10**6, max_steps: int = 256
) -> Optional[Fraction]:
    """Exact global minimum of a positive-definite p, if it is rational.

    Narrows an interval around the minimum with exact definiteness tests of
    p - c, proposing the simplest rational inside at every step.  A rational
    minimum with denominator within ``max_denominator`` is reached exactly
    (the simplest rational of a tight enough interval IS the minimum); an
    irrational minimum drives the candidate denominators past the bound and
    yields None instead of runaway coefficient growth.
    """

    def status(c: Fraction) -> Definiteness:
        return classify(p - UniPoly.constant(c)).classification

    hi = p.eval(0)
    s = status(hi)
    if s is Definiteness.POSITIVE_SEMIDEFINITE:
        return hi
    if s is Definiteness.POSITIVE_DEFINITE:
        # p(0) below the minimum is impossible; PD means hi < min cannot
        # happen, so p - hi PD would mean hi < min <= p(0) = hi.
        raise AssertionError("p(0) cannot be below the minimum")
    step = Fraction(1)
    lo = hi - step
    while status(lo) is not Definiteness.POSITIVE_DEFINITE:
        step *= 2
        lo = hi - step
    # Invariant: lo < min <= hi.
    for _ in range(max_steps):
        cand = simplest_rational_between(lo, hi)
        if cand.denominator > max_denominator:
            return None
        s = status(cand)
        if s is Definiteness.POSITIVE_SEMIDEFINITE:
            return cand
        if s is Definiteness.POSITIVE_DEFINITE:
            lo = cand
        else:
            hi = cand
    return None


def min_shift_split(p: UniPoly) -> Optional[ShiftSplit]:
    """Decompose p as g**2 * q + m (constant rational m), if possible.

    First tries the repeated-factor route g = gcd(p, p'), which succeeds
    exactly when p is itself a perfect-square multiple (m = 0).  For positive
    definite p it then searches the exact rational minimum m and square-splits
    p - m; the split is kept only when it is a genuine reduction (deg q >= 1).
    """
    if p.degree < 2:
        return None
    g = gcd(p, p.derivative())
    if g.degree >= 1:
        q, r = div_rem(p, g * g)
        if r.is_zero or r.degree == 0:
            return ShiftSplit(g, q, r.coefficient(0))
        return None
    report = classify(p)
    if report.classification is not Definiteness.POSITIVE_DEFINITE:
        return None
    m = rational_minimum(p)
    if m is None:
        return None
    shifted = p - UniPoly.constant(m)
    unit, factors = squarefree_decomposition(shifted)
    s = UniPoly.constant(1)
    for f, mult in factors:
        if mult >= 2:
            s = s * f ** (mult // 2)
    if s.degree < 1:
        return None
    q, r = div_rem(shifted, s * s)
    assert r.is_zero
    if q.degree < 1:
        return None
    return ShiftSplit(s, q, m)
