"""Polynomial expression parsing and certificate serialization.

Grammar (explicit multiplication only, '^' for powers):

    expr    := ['-'|'+'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ['^' NAT]
    atom    := NAT ['/' NAT] | VAR | '(' expr ')'

Rational literals are integer or num/den pairs; exponents are nonnegative
decimal integers.  Every syntax error carries a byte offset.

The structured certificate format is the wire format of the repository: a
JSON tree whose rationals are always "num/den" strings, round-tripping
certificates bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certificate import SosCertificate
from .multipoly import MultiPoly, format_multipoly
from .unipoly import UniPoly, format_rational, format_unipoly

CERTIFICATE_FORMAT = "ratsos.certificate/v1"


@dataclass(frozen=True)
class ParseDiagnostic:
    position: int
    message: str


class ParseError(ValueError):
    def __init__(self, position: int, message: str):
        self.diagnostic = ParseDiagnostic(position, message)
        super().__init__(f"parse error at {position}: {message}")


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_OPERATORS = set("+-*^()/")


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num', 'name', or the operator character
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPERATORS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError(j, "decimal literals are not allowed; use num/den rationals")
            tokens.append(_Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        raise ParseError(i, f"unexpected character {ch!r}")
    tokens.append(_Token("end", "", n))
    return tokens


# ---------------------------------------------------------------------------
# Recursive descent parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.position, f"expected {kind!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def parse(self) -> MultiPoly:
        poly = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(tok.position, f"unexpected {tok.text!r}")
        return poly

    def expr(self) -> MultiPoly:
        negate = False
        tok = self.peek()
        if tok.kind in "+-":
            self.advance()
            negate = tok.kind == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            tok = self.peek()
            if tok.kind == "+":
                self.advance()
                acc = acc + self.term()
            elif tok.kind == "-":
                self.advance()
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.peek().kind == "*":
            self.advance()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek().kind != "^":
            return base
        self.advance()
        tok = self.peek()
        if tok.kind == "-":
            raise ParseError(tok.position, "negative exponent is not allowed")
        exp_tok = self.expect("num")
        after = self.peek()
        if after.kind == "/":
            raise ParseError(after.position, "fractional exponent is not allowed")
        return base ** int(exp_tok.text)

    def atom(self) -> MultiPoly:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            value = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.advance()
                den_tok = self.expect("num")
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError(den_tok.position, "zero denominator")
                value = Fraction(int(tok.text), den)
            return MultiPoly.constant(self.variables, value)
        if tok.kind == "name":
            self.advance()
            if tok.text not in self.variables:
                raise ParseError(tok.position, f"unknown variable {tok.text!r}")
            return MultiPoly.variable(self.variables, tok.text)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            closing = self.peek()
            if closing.kind != ")":
                raise ParseError(closing.position, "expected ')'")
            self.advance()
            return inner
        if tok.kind == "end":
            raise ParseError(tok.position, "unexpected end of input")
        raise ParseError(tok.position, f"unexpected {tok.text!r}")


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse an expression over the given (ordered) variables.

    The variable order is the caller's: it is never inferred from the text,
    because the projection step is order-sensitive.
    """
    if not variables:
        raise ValueError("at least one variable name is required")
    names = list(variables)
    if len(set(names)) != len(names):
        raise ValueError("duplicate variable names")
    return _Parser(text, names).parse()


def parse_unipoly(text: str, variable: str = "x") -> UniPoly:
    return parse_poly(text, [variable]).to_unipoly()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(0, f"bad rational literal {text!r}") from exc


def wire_rational(f: Fraction) -> str:
    """Structured-format encoding: always 'num/den', never decimal."""
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Certificate rendering / parsing
# ---------------------------------------------------------------------------


def _poly_text(poly, variables: Sequence[str]) -> str:
    if isinstance(poly, UniPoly):
        return format_unipoly(poly, variables[0])
    return format_multipoly(poly)


def render_certificate(
    cert: SosCertificate,
    fmt: str = "text",
    variables: Sequence[str] = ("x",),
    input_text: str | None = None,
    verified: bool | None = None,
) -> str:
    """Render a certificate.

    "text" mirrors the sum-of-squares layout (scale * (sum m*(q)^2 + c));
    "structured" is the lossless JSON wire format.
    """
    if fmt == "text":
        return _render_text(cert, variables)
    if fmt == "structured":
        return _render_structured(cert, variables, input_text, verified)
    raise ValueError(f"unknown format {fmt!r}")


def _render_text(cert: SosCertificate, variables: Sequence[str]) -> str:
    parts = []
    for mult, q in cert.terms:
        body = f"({_poly_text(q, variables)})^2"
        parts.append(body if mult == 1 else f"{format_rational(mult)}*{body}")
    if cert.constant != 0 or not parts:
        parts.append(format_rational(cert.constant))
    inner = " + ".join(parts)
    if cert.scale != 1:
        return f"{format_rational(cert.scale)} * ({inner})"
    return inner


def _render_structured(
    cert: SosCertificate,
    variables: Sequence[str],
    input_text: str | None,
    verified: bool | None,
) -> str:
    ring = "uni"
    if cert.terms and not isinstance(cert.terms[0][1], UniPoly):
        ring = "multi"
        variables = cert.terms[0][1].variables
    doc = {
        "format": CERTIFICATE_FORMAT,
        "ring": ring,
        "variables": list(variables),
        "input": input_text,
        "scale": wire_rational(cert.scale),
        "terms": [
            {"multiplier": wire_rational(m), "polynomial": _poly_text(q, variables)}
            for m, q in cert.terms
        ],
        "constant": wire_rational(cert.constant),
        "support": list(cert.support) if cert.support is not None else None,
        "strategy": cert.strategy,
        "verified": verified,
    }
    return json.dumps(doc, indent=2)


def parse_certificate(text: str) -> SosCertificate:
    """Parse the structured JSON format back into a certificate."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.pos, f"bad JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("format") != CERTIFICATE_FORMAT:
        raise ParseError(0, "not a ratsos certificate document")
    variables = doc.get("variables") or ["x"]
    ring = doc.get("ring", "uni")
    terms = []
    for item in doc.get("terms", ()):
        mult = parse_rational(item["multiplier"])
        poly = parse_poly(item["polynomial"], variables)
        terms.append((mult, poly.to_unipoly() if ring == "uni" else poly))
    support = doc.get("support")
    return SosCertificate(
        scale=parse_rational(doc["scale"]),
        terms=tuple(terms),
        constant=parse_rational(doc["constant"]),
        support=tuple(support) if support is not None else None,
        strategy=doc.get("strategy", ""),
    )
