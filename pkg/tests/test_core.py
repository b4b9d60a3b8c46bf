import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from emx.core import (
    FiniteDomain,
    FiniteSupportDistribution,
    Hypothesis,
    Point,
    Sample,
    draw_sample,
    emx_gap,
    erm_max_coverage,
    expectation,
    naturals_domain,
)

# the ad table: people 1..4, ad_1 = {1,4}, ad_2 = {2,3,4}, ad_3 = {2,3}
AD_1 = Hypothesis.of({1, 4})
AD_2 = Hypothesis.of({2, 3, 4})
AD_3 = Hypothesis.of({2, 3})


@st.composite
def distributions(draw, max_support=6):
    n = draw(st.integers(1, max_support))
    ids = draw(st.lists(st.integers(0, 40), min_size=n, max_size=n, unique=True))
    weights = draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))
    total = sum(weights)
    return FiniteSupportDistribution(
        {i: Fraction(w, total) for i, w in zip(ids, weights)}
    )


class TestPointsAndDomains:
    def test_point_identity_is_by_id(self):
        assert Point(3, "a") == Point(3, "b")
        assert hash(Point(3, "a")) == hash(Point(3, "b"))
        assert Point(3) != Point(4)

    def test_finite_domain_indexing(self):
        dom = FiniteDomain(payloads=["a", "b", "c"])
        assert dom.size == 3
        assert dom.point(1).payload == "b"
        assert dom.index(dom.point(2)) == 2
        with pytest.raises(IndexError):
            dom.point(3)

    def test_finite_domain_rejects_empty(self):
        with pytest.raises(ValueError):
            FiniteDomain(size=0)

    def test_naturals_domain_is_lazy_and_inverse(self):
        dom = naturals_domain()
        p = dom.point(17)
        assert p.payload == 17
        assert dom.index(p) == 17
        assert dom.point(17) is p


class TestDistribution:
    def test_rejects_bad_masses(self):
        with pytest.raises(ValueError):
            FiniteSupportDistribution({})
        with pytest.raises(ValueError):
            FiniteSupportDistribution({1: Fraction(1, 2), 2: Fraction(1, 3)})
        with pytest.raises(ValueError):
            FiniteSupportDistribution({1: Fraction(0), 2: Fraction(1)})
        with pytest.raises(ValueError):
            FiniteSupportDistribution({1: Fraction(-1, 2), 2: Fraction(3, 2)})

    def test_uniform_and_point_mass(self):
        d = FiniteSupportDistribution.uniform([3, 1, 2])
        assert d.mass(1) == Fraction(1, 3)
        assert d.support == (1, 2, 3)
        pm = FiniteSupportDistribution.point_mass(7)
        assert pm.mass(7) == 1


class TestExpectation:
    def test_full_support_cover(self):
        d = FiniteSupportDistribution.uniform([2, 3, 4])
        assert expectation(d, Hypothesis.of({2, 3, 4})) == 1

    def test_ad_table_ad1(self):
        d = FiniteSupportDistribution.uniform([1, 2, 3, 4])
        assert expectation(d, AD_1) == Fraction(1, 2)

    def test_empty_hypothesis(self):
        d = FiniteSupportDistribution.uniform([5, 6])
        assert expectation(d, Hypothesis.empty()) == 0

    def test_gap_ad2(self):
        d = FiniteSupportDistribution.uniform([1, 2, 3, 4])
        assert emx_gap(d, AD_2) == Fraction(1, 4)

    def test_gap_zero_when_support_covered(self):
        d = FiniteSupportDistribution.uniform([1, 2, 3])
        assert emx_gap(d, Hypothesis.of({1, 2, 3, 9})) == 0

    def test_gap_on_naturals_prefix(self):
        d = FiniteSupportDistribution.uniform(range(1, 21))
        assert emx_gap(d, Hypothesis.of(range(1, 16))) == Fraction(1, 4)

    @given(distributions(), st.sets(st.integers(0, 40)), st.sets(st.integers(0, 40)))
    def test_expectation_monotone(self, d, small, extra):
        inner = Hypothesis.of(small)
        outer = Hypothesis.of(small | extra)
        assert expectation(d, inner) <= expectation(d, outer)

    @given(distributions(), st.sets(st.integers(0, 40)))
    def test_gap_range_and_zero_iff_cover(self, d, ids):
        h = Hypothesis.of(ids)
        gap = emx_gap(d, h)
        assert 0 <= gap <= 1
        assert (gap == 0) == set(d.support).issubset(ids)


class TestSampling:
    def test_zero_draws(self):
        d = FiniteSupportDistribution.uniform([1, 2])
        assert draw_sample(d, 0, 5).points == ()

    def test_point_mass_always_draws_the_point(self):
        d = FiniteSupportDistribution.point_mass(9)
        assert draw_sample(d, 7, 123).points == (9,) * 7

    def test_golden_sequence(self):
        # frozen after the first run; reruns must reproduce it bit-identically
        d = FiniteSupportDistribution.uniform(range(1, 21))
        assert draw_sample(d, 10, 42).points == (4, 1, 9, 8, 8, 5, 4, 18, 3, 19)

    @given(st.integers(0, 2**64), st.integers(0, 30))
    def test_reproducible(self, seed, m):
        d = FiniteSupportDistribution({1: Fraction(1, 2), 2: Fraction(1, 3), 5: Fraction(1, 6)})
        assert draw_sample(d, m, seed) == draw_sample(d, m, seed)

    def test_empirical_frequencies(self):
        d = FiniteSupportDistribution({1: Fraction(1, 2), 2: Fraction(1, 3), 5: Fraction(1, 6)})
        n = 100_000
        sample = draw_sample(d, n, 2024)
        counts = {pid: 0 for pid in d.support}
        for pid in sample.points:
            counts[pid] += 1
        for pid, mass in d.items():
            p = float(mass)
            se = math.sqrt(p * (1 - p) / n)
            assert abs(counts[pid] / n - p) <= 4 * se

    def test_samples_stay_in_support(self):
        d = FiniteSupportDistribution({3: Fraction(2, 5), 8: Fraction(3, 5)})
        sample = draw_sample(d, 200, 7)
        assert sample.distinct() <= {3, 8}


class TestErm:
    def test_ad_table_training_multiset(self):
        sample = Sample((2, 3, 3, 4), seed=0)
        assert erm_max_coverage(sample, [AD_1, AD_2, AD_3]) is AD_2

    def test_single_visitor_prefers_ad1(self):
        sample = Sample((1,), seed=0)
        assert erm_max_coverage(sample, [AD_1, AD_2, AD_3]) is AD_1

    def test_all_zero_coverage_takes_first(self):
        sample = Sample((99,), seed=0)
        assert erm_max_coverage(sample, [AD_1, AD_2, AD_3]) is AD_1

    def test_rejects_empty_candidates(self):
        with pytest.raises(ValueError):
            erm_max_coverage(Sample((1,), seed=0), [])

    @given(
        st.lists(st.integers(0, 6), min_size=1, max_size=8),
        st.lists(st.sets(st.integers(0, 6)), min_size=1, max_size=5),
    )
    def test_output_coverage_is_maximal(self, points, candidate_sets):
        sample = Sample(tuple(points), seed=0)
        candidates = [Hypothesis.of(s) for s in candidate_sets]
        chosen = erm_max_coverage(sample, candidates)
        best = max(sum(1 for p in points if p in c) for c in candidates)
        assert sum(1 for p in points if p in chosen) == best
