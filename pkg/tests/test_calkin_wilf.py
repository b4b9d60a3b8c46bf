from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from emx.calkin_wilf import calkin_wilf_domain, first, fraction_at, index_of
from oracles import calkin_wilf_bfs, calkin_wilf_recurrence


def test_first_five():
    assert first(5) == [
        Fraction(1, 1),
        Fraction(1, 2),
        Fraction(2, 1),
        Fraction(1, 3),
        Fraction(3, 2),
    ]


def test_matches_bfs_oracle():
    assert first(512) == calkin_wilf_bfs(512)


def test_matches_recurrence_oracle():
    assert first(512) == calkin_wilf_recurrence(512)


def test_enumeration_is_injective_and_reduced():
    seen = first(1000)
    assert len(set(seen)) == 1000
    assert all(q > 0 for q in seen)


@given(st.integers(min_value=0, max_value=100_000))
def test_index_roundtrip(i):
    assert index_of(fraction_at(i)) == i


@given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=500))
def test_every_positive_rational_has_an_index(a, b):
    q = Fraction(a, b)
    assert fraction_at(index_of(q)) == q


def test_index_of_rejects_nonpositive():
    with pytest.raises(ValueError):
        index_of(Fraction(0))
    with pytest.raises(ValueError):
        index_of(Fraction(-3, 2))


def test_domain_points_carry_fractions():
    dom = calkin_wilf_domain()
    assert dom.point(0).payload == Fraction(1)
    assert dom.point(4).payload == Fraction(3, 2)
    assert dom.index(dom.point(17)) == 17
