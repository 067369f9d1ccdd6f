"""Exact symmetric Gram matrices and their rational LDL factorization.

A Gram matrix B over the monomial basis (x**b_0, ..., x**b_{n-1}) represents
p = X B X^T.  A PSD rational B factors exactly as B = L D L^T with L unit
lower triangular and D = diag(pivots); no square roots are needed, which is
the whole point of staying in Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .certificate import SosCertificate, expand
from .unipoly import UniPoly, _to_fraction


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric rational matrix with a strictly decreasing exponent basis."""

    basis: tuple[int, ...]  # exponents, descending
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        basis = tuple(int(b) for b in self.basis)
        entries = tuple(tuple(_to_fraction(v) for v in row) for row in self.entries)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "entries", entries)
        n = len(basis)
        if any(a <= b for a, b in zip(basis, basis[1:])):
            raise ValueError("basis exponents must strictly decrease")
        if len(entries) != n or any(len(row) != n for row in entries):
            raise ValueError("entries must form a square matrix matching the basis")
        for i in range(n):
            for j in range(i):
                if entries[i][j] != entries[j][i]:
                    raise ValueError("matrix must be symmetric")

    @property
    def order(self) -> int:
        return len(self.basis)

    def polynomial(self) -> UniPoly:
        """X B X^T as a UniPoly."""
        terms: dict[int, Fraction] = {}
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                e = bi + bj
                terms[e] = terms.get(e, Fraction(0)) + self.entries[i][j]
        return UniPoly.from_terms(terms)


@dataclass(frozen=True)
class LdlResult:
    unit_lower: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[Fraction, ...]


@dataclass(frozen=True)
class NotPsd:
    index: int
    pivot: Fraction


def ldl(matrix: GramMatrix) -> Union[LdlResult, NotPsd]:
    """Exact B = L diag(pivots) L^T with unit lower-triangular L.

    Pivots must all be >= 0; a zero pivot is only admissible when its entire
    remaining column vanishes (otherwise the matrix is indefinite and the
    offending index is reported).
    """
    n = matrix.order
    a = [[matrix.entries[i][j] for j in range(n)] for i in range(n)]
    lower = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    pivots = [Fraction(0)] * n
    for k in range(n):
        piv = a[k][k]
        if piv < 0:
            return NotPsd(k, piv)
        pivots[k] = piv
        if piv == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    return NotPsd(k, piv)
            continue
        for i in range(k + 1, n):
            lower[i][k] = a[i][k] / piv
        for i in range(k + 1, n):
            lik = lower[i][k]
            if lik == 0:
                continue
            for j in range(k + 1, i + 1):
                a[i][j] -= lik * piv * lower[j][k]
                a[j][i] = a[i][j]
    return LdlResult(tuple(tuple(row) for row in lower), tuple(pivots))


def gram_to_certificate(matrix: GramMatrix, p: UniPoly) -> SosCertificate:
    """Certificate (pivot_j, column j of L as a polynomial) from a PSD Gram matrix."""
    if matrix.polynomial() != p:
        raise ValueError("Gram matrix does not represent the target polynomial")
    result = ldl(matrix)
    if isinstance(result, NotPsd):
        raise ValueError(f"Gram matrix is not PSD: pivot {result.pivot} at index {result.index}")
    terms = []
    constant = Fraction(0)
    for j in range(matrix.order):
        piv = result.pivots[j]
        if piv == 0:
            continue
        col = UniPoly.from_terms(
            {matrix.basis[i]: result.unit_lower[i][j] for i in range(matrix.order)}
        )
        if col.degree == 0:
            constant += piv * col.coefficient(0) ** 2
        else:
            terms.append((piv, col))
    cert = SosCertificate(
        scale=Fraction(1),
        terms=tuple(terms),
        constant=constant,
        support=tuple(reversed(matrix.basis)),
        strategy="gram_ldl",
    )
    if expand(cert, like=p) != p:
        raise RuntimeError("internal error: LDL certificate failed verification")
    return cert


def certificate_to_gram(cert: SosCertificate) -> GramMatrix:
    """B = sum scale*mult_j v_j v_j^T (+ the constant on the x**0 slot)."""
    exponents: set[int] = set()
    for _, q in cert.terms:
        if not isinstance(q, UniPoly):
            raise ValueError("certificate_to_gram expects univariate square terms")
        exponents.update(e for e, c in enumerate(q.coeffs) if c != 0)
    if cert.constant != 0:
        exponents.add(0)
    basis = tuple(sorted(exponents, reverse=True))
    n = len(basis)
    index = {b: i for i, b in enumerate(basis)}
    entries = [[Fraction(0)] * n for _ in range(n)]
    for mult, q in cert.terms:
        weight = cert.scale * mult
        coords = [(index[e], c) for e, c in enumerate(q.coeffs) if c != 0]
        for i, ci in coords:
            for j, cj in coords:
                entries[i][j] += weight * ci * cj
    if cert.constant != 0:
        k = index[0]
        entries[k][k] += cert.scale * cert.constant
    return GramMatrix(basis, tuple(tuple(row) for row in entries))
