"""Dense univariate polynomials with exact rational coefficients.

A ``UniPoly`` stores its coefficients as a tuple of :class:`~fractions.Fraction`
indexed by exponent (``coeffs[i]`` is the coefficient of ``x**i``).  Trailing
zeros are stripped on construction, so the zero polynomial is the empty tuple
and ``degree`` is always the index of the last nonzero coefficient.  All
arithmetic is exact: no rounding ever occurs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class UniPoly:
    """Immutable dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly((_to_fraction(c),))

    @staticmethod
    def x_power(exponent: int, coefficient=1) -> "UniPoly":
        """The monomial coefficient * x**exponent."""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return UniPoly([0] * exponent + [_to_fraction(coefficient)])

    @staticmethod
    def from_terms(terms: dict) -> "UniPoly":
        """Build from an {exponent: coefficient} mapping."""
        if not terms:
            return UniPoly.zero()
        top = max(terms)
        cs = [Fraction(0)] * (top + 1)
        for e, c in terms.items():
            cs[e] += _to_fraction(c)
        return UniPoly(cs)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return Fraction(0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "UniPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] += c
        return UniPoly(cs)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            f = _to_fraction(other)
            if f == 0:
                return UniPoly.zero()
            return UniPoly([c * f for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        cs = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    cs[i + j] += a * b
        return UniPoly(cs)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- calculus and evaluation -------------------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x) -> Fraction:
        """Exact value at x, by Horner's scheme."""
        x = _to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = eval

    # -- normalization -----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if self.is_zero:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.coeffs:
            num = int_gcd(num, abs(c.numerator))
            den = den * c.denominator // int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "UniPoly":
        """self divided by its content (sign is preserved)."""
        if self.is_zero:
            return self
        return self * (1 / self.content())

    def monic(self) -> "UniPoly":
        if self.is_zero:
            raise ZeroDivisionError("monic of zero polynomial")
        return self * (1 / self.leading_coefficient)

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        return format_unipoly(self)

    def __repr__(self) -> str:
        return f"UniPoly({format_unipoly(self)})"

    def to_multipoly(self, variable: str = "x"):
        from .multipoly import MultiPoly

        return MultiPoly((variable,), {(e,): c for e, c in enumerate(self.coeffs) if c != 0})


def _coerce(value):
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return UniPoly.constant(value)
    return NotImplemented


def div_rem(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Exact Euclidean division: a = b*q + r with deg r < deg b."""
    if b.is_zero:
        raise ZeroDivisionError("zero divisor")
    if a.degree < b.degree:
        return UniPoly.zero(), a
    rem = list(a.coeffs)
    db = b.degree
    inv_lead = 1 / b.leading_coefficient
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        f = c * inv_lead
        quot[i - db] = f
        for j, bc in enumerate(b.coeffs):
            rem[i - db + j] -= f * bc
    return UniPoly(quot), UniPoly(rem[:db])


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor over the rationals.

    Each remainder is divided by its content to keep coefficients small;
    positive rescaling does not change the gcd.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = a.primitive(), b.primitive()
    while not b.is_zero:
        _, r = div_rem(a, b)
        a, b = b, r.primitive()
    return a.monic()


def format_rational(f: Fraction) -> str:
    """Render a rational as 'n' or 'n/d' (never decimal)."""
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_unipoly(p: UniPoly, variable: str = "x") -> str:
    """Canonical text form, descending exponents, explicit '*'.

    The output is accepted by the expression parser, e.g.
    ``x^3-1/2*x^2-5/4*x-1/8``.
    """
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for e in range(p.degree, -1, -1):
        c = p.coefficient(e)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = format_rational(mag)
        else:
            var = variable if e == 1 else f"{variable}^{e}"
            body = var if mag == 1 else f"{format_rational(mag)}*{var}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)
