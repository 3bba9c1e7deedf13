from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stratval.avector import AVector, Ordering, TotalOrder, degree_of, lex_compare
from stratval.errors import SchemaError

IDS = ["34", "24", "14", "23", "13", "12"]
ORD = TotalOrder(IDS)


def test_lex_trivial_cases():
    zero = AVector.zero()
    assert lex_compare(zero, zero, ORD) is Ordering.EQUAL
    # single-entry vectors: the one supported earlier in the order is greater
    assert lex_compare(AVector.unit("24"), AVector.unit("13"), ORD) is Ordering.GREATER


def test_lex_gr24_example():
    u = AVector.unit("13") + AVector.unit("24")
    v = AVector.unit("12") + AVector.unit("34")
    # first difference at "34": 0 < 1
    assert lex_compare(u, v, ORD) is Ordering.LESS


def test_lex_unknown_id():
    with pytest.raises(SchemaError):
        lex_compare(AVector.unit("99"), AVector.zero(), ORD)


def test_degree_of():
    degs = {p: 1 for p in IDS}
    assert degree_of(AVector.zero(), degs) == 0
    assert degree_of(AVector.unit("34", 1), {"34": 5}) == 5
    ell = AVector({"z": Fraction(1, 3), "y": Fraction(2, 3)})
    assert degree_of(ell, {"z": 1, "y": 1}) == 1
    with pytest.raises(SchemaError):
        degree_of(AVector.unit("34"), {})


avec_strategy = st.builds(
    lambda pairs: AVector({p: Fraction(n, 6) for p, n in pairs}),
    st.lists(
        st.tuples(st.sampled_from(IDS), st.integers(-12, 12)),
        max_size=4,
        unique_by=lambda t: t[0],
    ),
)


@given(avec_strategy, avec_strategy, avec_strategy)
def test_lex_compatible_with_addition(u, v, w):
    if lex_compare(u, v, ORD) in (Ordering.GREATER, Ordering.EQUAL):
        assert lex_compare(u + w, v + w, ORD) in (Ordering.GREATER, Ordering.EQUAL)


@given(avec_strategy, avec_strategy)
def test_degree_linear(u, v):
    degs = {p: i + 1 for i, p in enumerate(IDS)}
    assert degree_of(u + v, degs) == degree_of(u, degs) + degree_of(v, degs)


@given(avec_strategy, avec_strategy)
def test_lex_total(u, v):
    c1, c2 = lex_compare(u, v, ORD), lex_compare(v, u, ORD)
    assert (c1 is Ordering.EQUAL) == (u == v)
    assert c1.value == -c2.value
