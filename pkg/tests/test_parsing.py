import random
from fractions import Fraction

import pytest

from ratsos import (
    MultiPoly,
    ParseError,
    SosCertificate,
    UniPoly,
    parse_certificate,
    parse_poly,
    parse_unipoly,
    render_certificate,
)


def test_parse_example_1_quartic():
    p = parse_unipoly("x^4+2*x^3-18*x^2-12*x+117")
    assert p.coeffs == (
        Fraction(117),
        Fraction(-12),
        Fraction(-18),
        Fraction(2),
        Fraction(1),
    )


def test_parse_zero_and_constants():
    assert parse_poly("0", ["x"]).is_zero
    assert parse_unipoly("7/3") == UniPoly.constant(Fraction(7, 3))
    assert parse_unipoly("-7/3") == UniPoly.constant(Fraction(-7, 3))


def test_parse_example_13_input():
    p = parse_poly("x^6+4*x^3*y^2*z+y^6+2*y^4*z^2+y^2*z^4+4*z^6", ["x", "y", "z"])
    assert p.coefficient((3, 2, 1)) == 4
    assert p.coefficient((0, 0, 6)) == 4
    assert len(p.terms) == 6


def test_parse_parentheses_and_powers():
    assert parse_unipoly("(x+1)^2") == parse_unipoly("x^2+2*x+1")
    assert parse_unipoly("(x^2-1)*(x^2+1)") == parse_unipoly("x^4-1")
    assert parse_unipoly("1/2*x") * 2 == parse_unipoly("x")


def test_parse_unary_minus():
    assert parse_unipoly("-x^2+1") == parse_unipoly("1-x^2")
    assert parse_unipoly("-(x-1)") == parse_unipoly("1-x")


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("x^", "expected"),
        ("x^-2", "negative exponent"),
        ("x^1/2", "fractional exponent"),
        ("x**2", "unexpected"),
        ("x y", "unexpected"),
        ("2x", "unexpected"),  # implicit multiplication is not allowed
        ("q+1", "unknown variable"),
        ("(x+1", "expected ')'"),
        ("1.5*x", "decimal"),
        ("1/0", "zero denominator"),
        ("", "unexpected end"),
        ("x$", "unexpected character"),
    ],
)
def test_parse_errors_have_positions(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_poly(text, ["x"])
    diag = err.value.diagnostic
    assert fragment in diag.message
    assert 0 <= diag.position <= len(text)


def test_parse_never_crashes_on_junk():
    rng = random.Random(123)
    alphabet = "xy+-*^()/0123456789 ._$"
    for _ in range(300):
        s = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 14)))
        try:
            parse_poly(s, ["x", "y"])
        except ParseError as exc:
            assert 0 <= exc.diagnostic.position <= len(s)


def rand_certificate(rng) -> SosCertificate:
    def rand_q():
        deg = rng.randint(0, 4)
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 8)) for _ in range(deg)]
        coeffs.append(Fraction(rng.randint(1, 9)))
        return UniPoly(coeffs)

    terms = tuple(
        (Fraction(rng.randint(1, 9), rng.randint(1, 8)), rand_q())
        for _ in range(rng.randint(0, 4))
    )
    return SosCertificate(
        scale=Fraction(rng.randint(1, 5), rng.randint(1, 5)),
        terms=terms,
        constant=Fraction(rng.randint(0, 9), rng.randint(1, 8)),
        support=tuple(sorted(rng.sample(range(10), rng.randint(1, 4)))),
        strategy="random",
    )


def test_certificate_roundtrip_200_random():
    rng = random.Random(20240601)
    for _ in range(200):
        cert = rand_certificate(rng)
        blob = render_certificate(cert, "structured")
        back = parse_certificate(blob)
        assert back == cert


def test_certificate_roundtrip_multivariate():
    q = parse_poly("x*y-1/2*x^2", ["x", "y"])
    cert = SosCertificate(Fraction(2), ((Fraction(3, 4), q),), Fraction(1, 8))
    back = parse_certificate(render_certificate(cert, "structured"))
    assert back == cert
    assert isinstance(back.terms[0][1], MultiPoly)


def test_text_rendering():
    cert = SosCertificate(
        Fraction(1),
        (
            (Fraction(1), parse_unipoly("x^3-x^2+x-1")),
            (Fraction(1), parse_unipoly("x^2-x+1/2")),
            (Fraction(1), parse_unipoly("x-1/2")),
        ),
        Fraction(1, 2),
    )
    text = render_certificate(cert, "text")
    assert "(x^3-x^2+x-1)^2" in text
    assert text.endswith("+ 1/2")


def test_text_rendering_empty():
    assert render_certificate(SosCertificate(Fraction(1), (), Fraction(0)), "text") == "0"


def test_text_rendering_scale_and_multipliers():
    cert = SosCertificate(
        Fraction(2),
        ((Fraction(1, 4), parse_unipoly("x^2-15/8")),),
        Fraction(1, 128),
    )
    assert render_certificate(cert, "text") == "2 * (1/4*(x^2-15/8)^2 + 1/128)"


def test_structured_uses_num_den_strings():
    cert = SosCertificate(Fraction(1), ((Fraction(1), parse_unipoly("x")),), Fraction(0))
    blob = render_certificate(cert, "structured")
    assert '"1/1"' in blob
    assert '"0/1"' in blob


def test_parse_certificate_rejects_junk():
    with pytest.raises(ParseError):
        parse_certificate("not json at all {")
    with pytest.raises(ParseError):
        parse_certificate('{"format": "something-else"}')
