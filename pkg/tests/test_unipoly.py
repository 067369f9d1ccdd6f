import random
from fractions import Fraction

import pytest

from ratsos import UniPoly, div_rem, gcd, parse_unipoly


def rand_poly(rng, max_deg=12, lo=-9, hi=9):
    deg = rng.randint(0, max_deg)
    return UniPoly([rng.randint(lo, hi) for _ in range(deg + 1)])


def test_construction_strips_trailing_zeros():
    p = UniPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert p.coeffs == (Fraction(1), Fraction(2))
    assert UniPoly([0, 0]).is_zero
    assert UniPoly([]).degree == -1


def test_arithmetic_basics():
    x = UniPoly((0, 1))
    p = x * x - 1
    q = x - 1
    assert p == (x - 1) * (x + 1)
    assert p - p == UniPoly.zero()
    assert (q * 3).leading_coefficient == 3
    assert (x**5).degree == 5


def test_div_rem_exact_factor():
    q, r = div_rem(parse_unipoly("x^2-1"), parse_unipoly("x-1"))
    assert q == parse_unipoly("x+1")
    assert r.is_zero


def test_div_rem_monomial():
    q, r = div_rem(parse_unipoly("x^3"), parse_unipoly("x"))
    assert q == parse_unipoly("x^2")
    assert r.is_zero


def test_div_rem_paper_degree16():
    # p = (x^2-x-1)^2 (2x^12 - x + 5) + 1, so dividing by (x^2-x-1)^2
    # leaves quotient 2x^12 - x + 5 and remainder 1.
    p = parse_unipoly("2*x^16-4*x^15-2*x^14+4*x^13+2*x^12-x^5+7*x^4-9*x^3-7*x^2+9*x+6")
    g = parse_unipoly("x^2-x-1")
    q, r = div_rem(p, g * g)
    assert q == parse_unipoly("2*x^12-x+5")
    assert r == UniPoly.constant(1)
    # independent oracle: rebuild p from the parts
    assert g * g * q + r == p


def test_div_rem_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        div_rem(parse_unipoly("x"), UniPoly.zero())


def test_div_rem_random_ring_identity():
    rng = random.Random(20240811)
    checked = 0
    while checked < 250:
        a = rand_poly(rng)
        b = rand_poly(rng)
        if b.is_zero:
            continue
        q, r = div_rem(a, b)
        assert b * q + r == a
        assert r.degree < b.degree
        checked += 1


def test_gcd_examples():
    assert gcd(parse_unipoly("x^2"), parse_unipoly("x^3")) == parse_unipoly("x^2")
    assert gcd(parse_unipoly("x^2+1"), parse_unipoly("x")) == UniPoly.constant(1)
    p = parse_unipoly("2*x^16-4*x^15-2*x^14+4*x^13+2*x^12-x^5+7*x^4-9*x^3-7*x^2+9*x+6")
    # the repeated factor is shared by p-1 and p'
    assert gcd(p - UniPoly.constant(1), p.derivative()) == parse_unipoly("x^2-x-1")


def test_gcd_zero_arguments():
    with pytest.raises(ValueError):
        gcd(UniPoly.zero(), UniPoly.zero())
    assert gcd(UniPoly.zero(), parse_unipoly("3*x")) == parse_unipoly("x")


def test_gcd_random_divides_both():
    rng = random.Random(77)
    for _ in range(200):
        a = rand_poly(rng, max_deg=8, lo=-5, hi=5)
        b = rand_poly(rng, max_deg=8, lo=-5, hi=5)
        if a.is_zero and b.is_zero:
            continue
        g = gcd(a, b)
        assert g.leading_coefficient == 1  # monic
        for p in (a, b):
            if not p.is_zero:
                _, r = div_rem(p, g)
                assert r.is_zero


def test_eval_horner():
    p = parse_unipoly("x^4+2*x^3-18*x^2-12*x+117")
    # independent long-hand expansion: 16 + 16 - 72 - 24 + 117 = 53
    naive = sum(c * Fraction(2) ** e for e, c in enumerate(p.coeffs))
    assert naive == 53
    assert p.eval(2) == 53
    assert p.eval(0) == p.coefficient(0)


def test_eval_grid_value_from_core_zero_scan():
    # the bivariate feasibility polynomial restricted to the diagonal; the
    # text displays +522t^2 but its own source P_14 has -522t^2, and only the
    # corrected sign reproduces g(1/2) = 8.
    g = parse_unipoly("-512*t^10-7168*t^8-26176*t^6+9216*t^4-522*t^2", "t")
    assert g.eval(Fraction(1, 2)) == 8


def test_eval_is_ring_homomorphism():
    rng = random.Random(3)
    for _ in range(200):
        p = rand_poly(rng, max_deg=7, lo=-6, hi=6)
        q = rand_poly(rng, max_deg=7, lo=-6, hi=6)
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        assert (p + q).eval(x) == p.eval(x) + q.eval(x)
        assert (p * q).eval(x) == p.eval(x) * q.eval(x)


def test_derivative():
    assert parse_unipoly("x^2").derivative() == parse_unipoly("2*x")
    assert UniPoly.constant(5).derivative().is_zero
    p = parse_unipoly("x^3-4*x+1")
    assert p.derivative() == parse_unipoly("3*x^2-4")


def test_content_and_primitive():
    p = UniPoly([Fraction(2, 3), Fraction(4, 3), 2])
    c = p.content()
    assert c == Fraction(2, 3)
    prim = p.primitive()
    assert prim * c == p
    assert prim.content() == 1


def test_str_roundtrips_through_parser():
    rng = random.Random(11)
    for _ in range(100):
        p = rand_poly(rng)
        assert parse_unipoly(str(p)) == p
