from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtfour.exact import (
    HigherOrderPoleError,
    ParamContext,
    RatFn,
    UniPoly,
    format_rat,
    laurent_at_zero,
    parse_rat,
    pole_locations,
    pole_order_at,
    poly_gcd,
    residue_at_zero,
)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=30)
polys = st.lists(rats, min_size=0, max_size=5).map(UniPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def ratfns():
    return st.tuples(polys, nonzero_polys).map(lambda nd: RatFn(*nd))


S1 = RatFn.s1()


def test_parse_and_format():
    assert parse_rat("3/6") == Fraction(1, 2)
    assert parse_rat("-4") == -4
    assert format_rat(Fraction(-6, 4)) == "-3/2"
    assert format_rat(Fraction(5)) == "5"
    with pytest.raises(ValueError):
        parse_rat("1/2/3")


def test_unipoly_basics():
    p = UniPoly([1, 2, 1])  # (1 + s1)^2
    assert p.degree == 2 and p.lead() == 1
    assert p == UniPoly.linear(1, 1) ** 2
    q, r = p.divmod(UniPoly.linear(1, 1))
    assert q == UniPoly.linear(1, 1) and r.is_zero()
    assert p(Fraction(-1)) == 0
    assert p.derivative() == UniPoly([2, 2])
    assert UniPoly([0, 0, 3]).valuation() == 2
    assert UniPoly.from_json(p.to_json()) == p


def test_gcd_is_monic():
    a = UniPoly.linear(1, 2) * UniPoly.linear(3, -1)
    b = UniPoly.linear(1, 2) * UniPoly.linear(1, 5)
    assert poly_gcd(a, b) == UniPoly.linear(1, 2)


def test_ratfn_reduces():
    f = RatFn(UniPoly([0, 2]) * UniPoly([1, 1]), UniPoly([0, 4]))
    assert f == RatFn(UniPoly([Fraction(1, 2), Fraction(1, 2)]))
    assert f.den == UniPoly([1])
    assert RatFn.from_json(f.to_json()) == f


def test_ratfn_pole_raises():
    f = 1 / S1
    with pytest.raises(ZeroDivisionError):
        f(0)


@settings(max_examples=40, deadline=None)
@given(ratfns(), ratfns(), ratfns())
def test_field_laws(a, b, c):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(ratfns(), ratfns(), rats)
def test_evaluation_homomorphism(a, b, x):
    try:
        va, vb = a(x), b(x)
    except ZeroDivisionError:
        return
    assert (a + b)(x) == va + vb
    assert (a * b)(x) == va * vb


@settings(max_examples=40, deadline=None)
@given(ratfns(), ratfns(), rats)
def test_residue_linear(a, b, lam):
    try:
        ra, rb = residue_at_zero(a), residue_at_zero(b)
    except HigherOrderPoleError:
        return
    try:
        r = residue_at_zero(a + b * lam)
    except HigherOrderPoleError:
        return
    assert r == ra + lam * rb


def test_residue_and_laurent():
    f = (S1 + 3) / (S1 * (S1 + 2))
    assert residue_at_zero(f) == Fraction(3, 2)
    v, coeffs = laurent_at_zero(f, 3)
    assert v == -1 and coeffs[0] == Fraction(3, 2)
    assert residue_at_zero(S1 + 1) == 0
    with pytest.raises(HigherOrderPoleError, match="higher-order pole"):
        residue_at_zero(1 / (S1 * S1))


def test_pole_locations():
    f = 1 / ((S1 + 2) * (S1 * S1 + 1) * (S1 - Fraction(1, 3)) ** 2)
    rep = pole_locations(f)
    assert rep.roots == frozenset({Fraction(-2), Fraction(1, 3)})
    assert rep.nonrational_factor
    assert pole_order_at(f, Fraction(1, 3)) == 2
    assert pole_order_at(f, 0) == 0


def test_context_linear_forms():
    ctx = ParamContext("2", "3", "5")
    # s4 = -s1 - 5, so s1 + s4 = -5 and m + s4 = -s1
    assert ctx.linear(0, 1, 0, 0, 1) == (0, -5)
    assert ctx.linear(1, 0, 0, 0, 1) == (-1, 0)
    spec = ctx.with_m(0, (0, 0, 0, -1))
    assert spec.m_value() == -ctx.var(4)
    assert ctx.scaled(2).s2 == 4


def test_genericity():
    vals = {"s2": Fraction(2), "s3": Fraction(3), "m": Fraction(1)}
    bad = ParamContext("2", "3", "1").genericity_violation()
    assert bad and sum(c * vals[n] for n, c in bad.items()) == 0
    assert max(abs(c) for c in bad.values()) <= 40
    assert ParamContext("13/7", "29/11", "31/5").genericity_violation() is None
    assert ParamContext("0", "3", "1").genericity_violation() == {"s2": 1}
