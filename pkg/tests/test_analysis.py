from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from emx.analysis import (
    DescentError,
    DeskScaleError,
    SearchProblem,
    counting_refutes,
    descend,
    reconstruction_image,
    search_schemes,
    witness_to_text,
)
from emx.core import FiniteDomain, naturals_domain
from emx.schemes import (
    MonotoneScheme,
    enumeration_scheme,
    identity_eta_scheme,
    tower_scheme,
    verify_soundness,
)
from emx.towers import enumerated_tower, finite_proxy_tower
from oracles import scheme_exists_brute_force

# depth-1 proxy instance whose reconstruction image leaves an anchor free
# (most seeds cover the whole 60-point domain; this one does not)
PROXY_SIZE = 60
PROXY_SEED = 2510


def naturals_scheme():
    return enumeration_scheme(enumerated_tower(naturals_domain()))


def proxy_scheme():
    return tower_scheme(finite_proxy_tower(FiniteDomain(size=PROXY_SIZE), 1, PROXY_SEED))


class TestReconstructionImage:
    def test_enumeration_image_is_the_prefix(self):
        z = reconstruction_image(naturals_scheme(), range(6))
        assert z == frozenset(range(6))

    def test_sigma_reading_is_a_subset_for_selection_schemes(self):
        scheme = proxy_scheme()
        direct = reconstruction_image(scheme, range(8), "direct")
        sigma = reconstruction_image(scheme, range(8), "sigma")
        superset = reconstruction_image(scheme, range(8), "superset")
        assert sigma <= direct
        assert superset == direct | sigma == direct

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            reconstruction_image(naturals_scheme(), range(4), "both")


class TestDescend:
    def test_enumeration_descent(self):
        witness = descend(naturals_scheme(), range(101), range(6))
        assert witness.x == 6
        assert witness.z_size == 6
        reduced = witness.reduced
        assert reduced.m == 0
        # the reduced reconstruction from nothing must hold all of Y
        assert frozenset(range(6)) <= reduced.eta(())
        report = verify_soundness(reduced, [{y} for y in range(6)])
        assert report.ok

    def test_single_subset_degenerate_sub_domain(self):
        witness = descend(naturals_scheme(), range(50), {0, 1})
        assert witness.reduced.m == 0
        assert verify_soundness(witness.reduced, [{0}, {1}]).ok

    def test_depth1_proxy_descent(self):
        witness = descend(proxy_scheme(), range(PROXY_SIZE), range(8))
        assert witness.z_size < PROXY_SIZE
        reduced = witness.reduced
        assert reduced.m == 1
        report = verify_soundness(reduced, combinations(range(8), 2))
        assert report.checked == 28
        assert report.violations == ()

    def test_desk_scale_failure_reports_image_size(self):
        # restrict the domain to the sub-domain itself: everything is covered
        with pytest.raises(DeskScaleError) as err:
            descend(naturals_scheme(), range(6), range(6))
        assert err.value.z_size == 6

    def test_unsound_scheme_fails_verification(self):
        # identity eta never recovers the dropped point, and its image
        # misses most of the domain, so an anchor exists but the reduced
        # scheme is unsound
        with pytest.raises((DescentError, DeskScaleError)):
            descend(identity_eta_scheme(2), range(30), range(5))

    def test_rejects_tiny_sub_domain_and_arity_zero(self):
        with pytest.raises(ValueError):
            descend(naturals_scheme(), range(10), {3})
        zero = MonotoneScheme(0, lambda b: frozenset(), lambda t: frozenset(range(3)))
        with pytest.raises(ValueError):
            descend(zero, range(10), range(2))

    def test_sub_domain_must_be_inside_domain(self):
        with pytest.raises(ValueError):
            descend(naturals_scheme(), range(5), {3, 9})


class TestCountingBound:
    def test_known_thresholds(self):
        assert counting_refutes(SearchProblem(3, 0, 2))
        assert not counting_refutes(SearchProblem(3, 0, 3))
        assert counting_refutes(SearchProblem(5, 1, 2))
        assert not counting_refutes(SearchProblem(5, 1, 3))

    @given(st.integers(2, 6), st.integers(0, 3), st.integers(1, 8))
    @settings(max_examples=40)
    def test_refutation_implies_search_refutation(self, n, m, budget):
        if n < max(m + 1, 2):
            return
        problem = SearchProblem(n, m, budget)
        if counting_refutes(problem):
            result = search_schemes(problem, use_precheck=False)
            assert result.verdict == "UNSAT"


class TestSearch:
    @pytest.mark.parametrize(
        "n,m,budget,expected",
        [
            (3, 0, 2, "UNSAT"),
            (3, 0, 3, "SAT"),
            (5, 1, 2, "UNSAT"),
            (5, 1, 3, "SAT"),
            (4, 1, 2, "UNSAT"),
            (4, 1, 3, "SAT"),
        ],
    )
    def test_verdicts_match_brute_force_oracle(self, n, m, budget, expected):
        oracle = scheme_exists_brute_force(n, m, budget)
        assert ("SAT" if oracle else "UNSAT") == expected
        result = search_schemes(SearchProblem(n, m, budget))
        assert result.verdict == expected

    def test_sat_witness_is_verified_and_within_budget(self):
        result = search_schemes(SearchProblem(5, 1, 3))
        assert result.verdict == "SAT"
        witness = result.witness
        subsets = list(combinations(range(5), 2))
        assert verify_soundness(witness, subsets).ok
        for t, out in result.eta_table:
            assert len(out) <= 3
            assert set(t) <= set(out)

    def test_trivial_one_to_zero_witness_is_whole_domain(self):
        result = search_schemes(SearchProblem(3, 0, 3))
        assert result.verdict == "SAT"
        assert result.witness.eta(()) == frozenset({0, 1, 2})

    def test_unsat_monotone_in_budget(self):
        for budget in (1, 2):
            assert search_schemes(SearchProblem(5, 1, budget)).verdict == "UNSAT"
        assert search_schemes(SearchProblem(5, 1, 3)).verdict == "SAT"

    def test_node_limit_yields_undecided(self):
        result = search_schemes(SearchProblem(6, 2, 4), node_limit=3, use_precheck=False)
        assert result.verdict == "UNDECIDED"
        assert "node limit" in result.reason

    def test_precheck_agrees_with_exhaustion(self):
        fast = search_schemes(SearchProblem(5, 1, 2))
        slow = search_schemes(SearchProblem(5, 1, 2), use_precheck=False)
        assert fast.verdict == slow.verdict == "UNSAT"
        assert slow.reason == "search space exhausted"

    def test_problem_validation(self):
        with pytest.raises(ValueError):
            SearchProblem(1, 0, 2)
        with pytest.raises(ValueError):
            SearchProblem(4, -1, 2)
        with pytest.raises(ValueError):
            SearchProblem(4, 1, 0)

    def test_witness_text_format(self):
        result = search_schemes(SearchProblem(3, 0, 3))
        text = witness_to_text(result)
        lines = text.splitlines()
        assert lines[0] == "# emx-scheme-witness 1"
        assert "n: 3" in lines and "m: 0" in lines and "budget: 3" in lines
        assert any(line.startswith("sigma: ") for line in lines)
        assert any(line.startswith("eta: ") for line in lines)
        with pytest.raises(ValueError):
            witness_to_text(search_schemes(SearchProblem(3, 0, 2)))
