import random
from fractions import Fraction

import pytest

from ratsos import MultiPoly, parse_poly


def rand_multipoly(rng, variables=("x", "y", "z"), max_exp=4, nterms=5):
    terms = {}
    for _ in range(rng.randint(0, nterms)):
        exps = tuple(rng.randint(0, max_exp) for _ in variables)
        terms[exps] = terms.get(exps, 0) + rng.randint(-9, 9)
    return MultiPoly(variables, terms)


def test_zero_coefficients_are_dropped():
    p = MultiPoly(("x", "y"), {(1, 0): 1, (0, 1): 0})
    assert (0, 1) not in p.terms
    assert p == MultiPoly(("x", "y"), {(1, 0): 1})


def test_exponent_vector_length_checked():
    with pytest.raises(ValueError):
        MultiPoly(("x", "y"), {(1,): 1})
    with pytest.raises(ValueError):
        MultiPoly(("x",), {(-1,): 1})


def test_graded_lex_order():
    p = parse_poly("x^4+x^3*z+2*x^2*y^2+z^4", ["x", "y", "z"])
    exps = [e for e, _ in p.sorted_terms()]
    assert exps == [(4, 0, 0), (3, 0, 1), (2, 2, 0), (0, 0, 4)]
    assert str(p) == "x^4+x^3*z+2*x^2*y^2+z^4"


def test_substitute_powers_example_11():
    p = parse_poly("x^4+x^3*z+2*x^2*y^2+z^4", ["x", "y", "z"])
    g = p.substitute_powers((1, 5, 13))
    assert {e: c for e, c in enumerate(g.coeffs) if c != 0} == {
        52: 1,
        16: 1,
        12: 2,
        4: 1,
    }


def test_substitute_powers_example_12():
    p = parse_poly("x^6+2*x^5*y+5*x^2*y^4+4*x*y^5+y^6", ["x", "y"])
    g = p.substitute_powers((1, 7))
    assert {e: c for e, c in enumerate(g.coeffs) if c != 0} == {
        42: 1,
        36: 4,
        30: 5,
        12: 2,
        6: 1,
    }


def test_substitute_powers_constant_and_collisions():
    one = MultiPoly.constant(("x", "y"), 1)
    assert one.substitute_powers((1, 2)).coeffs == (Fraction(1),)
    # x^2 and y collide under k = (1, 2); coefficients add
    p = parse_poly("x^2+3*y", ["x", "y"])
    g = p.substitute_powers((1, 2))
    assert g.coefficient(2) == 4


def test_substitute_powers_is_ring_homomorphism():
    rng = random.Random(99)
    k = (1, 5, 13)
    for _ in range(200):
        p = rand_multipoly(rng)
        q = rand_multipoly(rng)
        assert (p * q).substitute_powers(k) == p.substitute_powers(k) * q.substitute_powers(k)
        assert (p + q).substitute_powers(k) == p.substitute_powers(k) + q.substitute_powers(k)


def test_eval():
    p = parse_poly("x^4*y^2+x^2*y^4-3*x^2*y^2+1", ["x", "y"])
    assert p.eval((1, 1)) == 0
    assert p.eval((0, 0)) == 1
    assert p.eval((Fraction(1, 2), 2)) == Fraction(1, 4) + 4 - 3 + 1


def test_to_unipoly():
    p = parse_poly("x^2-1/2*x", ["x"])
    u = p.to_unipoly()
    assert u.coeffs == (Fraction(0), Fraction(-1, 2), Fraction(1))
    with pytest.raises(ValueError):
        parse_poly("x*y", ["x", "y"]).to_unipoly()


def test_str_roundtrips_through_parser():
    rng = random.Random(5)
    for _ in range(100):
        p = rand_multipoly(rng)
        assert parse_poly(str(p), ["x", "y", "z"]) == p
