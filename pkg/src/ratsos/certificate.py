"""Sum-of-squares certificates and the exact verifier that gates every emission.

A certificate asserts

    p == scale * (sum_j multiplier_j * square_poly_j**2 + constant)

with scale > 0, every multiplier > 0 and constant >= 0, all rational.  The
identity is checked coefficient by coefficient; there is no tolerance
anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence, Union

from .multipoly import MultiPoly
from .unipoly import UniPoly, _to_fraction

Poly = Union[UniPoly, MultiPoly]


@dataclass(frozen=True)
class SosCertificate:
    """A rational sum-of-squares representation of one polynomial.

    ``terms`` is a sequence of (multiplier, square_poly) pairs; the constant
    is kept apart from the squares so the strict-positivity margin stays
    visible.  ``support`` and ``strategy`` are provenance, not part of the
    verified identity.
    """

    scale: Fraction
    terms: tuple[tuple[Fraction, Poly], ...]
    constant: Fraction
    support: tuple[int, ...] | None = None
    strategy: str = ""

    def __post_init__(self):
        object.__setattr__(self, "scale", _to_fraction(self.scale))
        object.__setattr__(
            self, "terms", tuple((_to_fraction(m), q) for m, q in self.terms)
        )
        object.__setattr__(self, "constant", _to_fraction(self.constant))
        if self.support is not None:
            object.__setattr__(self, "support", tuple(int(s) for s in self.support))
        if self.scale <= 0:
            raise ValueError("certificate scale must be positive")
        for m, _ in self.terms:
            if m <= 0:
                raise ValueError("square multipliers must be positive")
        if self.constant < 0:
            raise ValueError("certificate constant must be nonnegative")

    @property
    def num_squares(self) -> int:
        return len(self.terms)


def _zero_like(p: Poly) -> Poly:
    if isinstance(p, UniPoly):
        return UniPoly.zero()
    return MultiPoly.zero(p.variables)


def _constant_like(p: Poly, c: Fraction) -> Poly:
    if isinstance(p, UniPoly):
        return UniPoly.constant(c)
    return MultiPoly.constant(p.variables, c)


def expand_square_sum(terms: Sequence[tuple[Fraction, Poly]], constant=0, like: Poly | None = None) -> Poly:
    """Fully expanded sum(multiplier * poly**2) + constant, exactly.

    ``like`` fixes the output ring when ``terms`` is empty; otherwise the
    ring of the first square polynomial is used.
    """
    if terms:
        acc = _zero_like(terms[0][1])
    elif like is not None:
        acc = _zero_like(like)
    else:
        acc = UniPoly.zero()
    for m, q in terms:
        acc = acc + q * q * _to_fraction(m)
    c = _to_fraction(constant)
    if c != 0:
        acc = acc + _constant_like(acc, c)
    return acc


def expand(cert: SosCertificate, like: Poly | None = None) -> Poly:
    """The polynomial the certificate claims to equal."""
    return expand_square_sum(cert.terms, cert.constant, like=like) * cert.scale


def verify(cert: SosCertificate, p: Poly) -> bool:
    """True iff the certificate expands to p, coefficient by coefficient."""
    if cert.terms:
        sample = cert.terms[0][1]
        if isinstance(sample, MultiPoly) != isinstance(p, MultiPoly):
            return False
        if isinstance(sample, MultiPoly) and sample.variables != p.variables:
            return False
    return expand(cert, like=p) == p


def two_squares_product(a: Poly, b: Poly, c: Poly, d: Poly) -> tuple[Poly, Poly]:
    """(E, F) with (a^2+b^2)(c^2+d^2) == E^2 + F^2, via E=ac+bd, F=ad-bc."""
    return a * c + b * d, a * d - b * c


def compose_with_square(cert: SosCertificate, s: Poly) -> SosCertificate:
    """Certificate for s^2 * p1 from a certificate for p1.

    Every square polynomial is multiplied by s and the old constant c0 turns
    into the extra square term c0 * s^2.
    """
    terms = [(m, q * s) for m, q in cert.terms]
    if cert.constant != 0:
        terms.append((cert.constant, s))
    return SosCertificate(
        scale=cert.scale,
        terms=tuple(terms),
        constant=Fraction(0),
        support=None,
        strategy=f"compose_square({cert.strategy})" if cert.strategy else "compose_square",
    )


def with_constant_added(cert: SosCertificate, m) -> SosCertificate:
    """Certificate for p + m from a certificate for p (m >= 0 rational).

    The shift lands inside the global scale, so the stored constant grows by
    m / scale.
    """
    m = _to_fraction(m)
    if m < 0:
        raise ValueError("only nonnegative constant shifts preserve an SOS")
    return replace(cert, constant=cert.constant + m / cert.scale)
