from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stratval.errors import ChartError, SchemaError
from stratval.laurent import LaurentFraction, LaurentPoly, parse_laurent


def test_parse_basic():
    p = parse_laurent("3*a^2*b^-1")
    assert p.terms == {(("a", 2), ("b", -1)): Fraction(3)}
    q = parse_laurent("a*b + a*t")
    assert q == LaurentPoly.var("a") * (LaurentPoly.var("b") + LaurentPoly.var("t"))
    assert parse_laurent("-x + 1/2") == LaurentPoly.var("x").scale(-1) + LaurentPoly.const(
        Fraction(1, 2)
    )


def test_parse_rejects_garbage():
    with pytest.raises(SchemaError):
        parse_laurent("a +* b ??")
    with pytest.raises(SchemaError):
        parse_laurent("")
    with pytest.raises(SchemaError):
        parse_laurent("x +")


def test_min_exponent_and_set_zero():
    t = LaurentPoly.var("t")
    u = LaurentPoly.var("u")
    assert (t * t).min_exponent("t") == 2
    assert (LaurentPoly.const(1) + t * u).set_zero("t") == LaurentPoly.const(1)
    with pytest.raises(ChartError):
        LaurentPoly.zero().min_exponent("t")
    with pytest.raises(ChartError):
        (t.divide_by_power("t", 2)).set_zero("t")


def test_example_open_set_multiplicity():
    # x14 on the Grassmannian open set vanishes along {d=0} with multiplicity 1
    g = parse_laurent("a*b*d + a*b*c*d")
    assert g.min_exponent("d") == 1


def _rand_poly(draw_terms):
    terms = {}
    for coef, exps in draw_terms:
        mono = tuple(
            sorted((v, e) for v, e in zip("xyz", exps) if e != 0)
        )
        terms[mono] = terms.get(mono, Fraction(0)) + Fraction(coef)
    return LaurentPoly(terms)


poly_strategy = st.builds(
    _rand_poly,
    st.lists(
        st.tuples(
            st.integers(-4, 4).filter(bool),
            st.tuples(st.integers(-2, 3), st.integers(-2, 3), st.integers(0, 2)),
        ),
        min_size=1,
        max_size=4,
    ),
)


@given(poly_strategy, poly_strategy)
def test_min_exponent_multiplicative(g, h):
    if g.is_zero() or h.is_zero():
        return
    prod = g * h
    assert not prod.is_zero()  # integral domain
    assert prod.min_exponent("x") == g.min_exponent("x") + h.min_exponent("x")


@given(poly_strategy, poly_strategy, poly_strategy)
def test_ring_laws(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f


def test_fraction_restrict_keeps_lowest_part():
    t, u = LaurentPoly.var("t"), LaurentPoly.var("u")
    # (t + t^2 u) / (t - t^2): order 0 along t, restriction is 1
    frac = LaurentFraction(t + t * t * u, t - t * t)
    assert frac.min_exponent("t") == 0
    assert frac.restrict("t").as_constant() == 1
    with pytest.raises(ChartError):
        LaurentFraction(t, u).restrict("t")
