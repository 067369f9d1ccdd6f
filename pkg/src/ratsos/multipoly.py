"""Sparse multivariate polynomials over the rationals.

Terms are stored as a dict mapping exponent vectors (one nonnegative int per
variable) to nonzero Fraction coefficients.  The canonical term order is
graded lexicographic: compare total degree first, then the exponent vector.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .unipoly import UniPoly, _to_fraction, format_rational


def grlex_key(exponents: tuple[int, ...]) -> tuple:
    return (sum(exponents), exponents)


class MultiPoly:
    """Immutable sparse multivariate polynomial over the rationals."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], object] = ()):
        variables = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables):
                raise ValueError(f"exponent vector {exps} does not match {len(variables)} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            f = _to_fraction(c)
            if f != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + f
        clean = {e: c for e, c in clean.items() if c != 0}
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(variables: Sequence[str]) -> "MultiPoly":
        return MultiPoly(variables, {})

    @staticmethod
    def constant(variables: Sequence[str], c) -> "MultiPoly":
        variables = tuple(variables)
        return MultiPoly(variables, {(0,) * len(variables): _to_fraction(c)})

    @staticmethod
    def variable(variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return MultiPoly(variables, {tuple(exps): Fraction(1)})

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self, reverse: bool = True) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded-lex order (descending by default)."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=reverse)

    def coefficient(self, exponents: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    # -- ring operations ---------------------------------------------------

    def _check_same_ring(self, other: "MultiPoly"):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            f = _to_fraction(other)
            return MultiPoly(self.variables, {e: c * f for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_ring(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, value):
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return MultiPoly.constant(self.variables, value)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- evaluation and substitution ----------------------------------------

    def eval(self, point: Sequence) -> Fraction:
        point = [_to_fraction(v) for v in point]
        if len(point) != len(self.variables):
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(point, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute_powers(self, exponents: Sequence[int]) -> UniPoly:
        """Map every monomial x1^d1...xn^dn to t^(k1*d1+...+kn*dn).

        Colliding images add; injectivity on the support is the caller's
        concern (see projectlift.power_sequence).
        """
        ks = [int(k) for k in exponents]
        if len(ks) != len(self.variables):
            raise ValueError("one substitution power per variable required")
        if any(k <= 0 for k in ks):
            raise ValueError("substitution powers must be positive")
        images: dict[int, Fraction] = {}
        for exps, c in self.terms.items():
            t = sum(k * d for k, d in zip(ks, exps))
            images[t] = images.get(t, Fraction(0)) + c
        return UniPoly.from_terms(images)

    def to_unipoly(self) -> UniPoly:
        if len(self.variables) != 1:
            raise ValueError("to_unipoly requires exactly one variable")
        return UniPoly.from_terms({e[0]: c for e, c in self.terms.items()})

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        return format_multipoly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables}, {format_multipoly(self)})"


def format_multipoly(p: MultiPoly) -> str:
    """Canonical text form in descending graded-lex order, explicit '*'."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for exps, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = []
        for name, e in zip(p.variables, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)
