import math
from fractions import Fraction

import pytest
from hypothesis import given

from alphatree.bounds import (
    TOL,
    alphabetic_bounds,
    bst_bounds,
    bump_counts,
    entropy,
    entropy_float,
    bump_sets,
    sum_adjacent_min,
)
from alphatree.bst import SearchDist, build_bst
from alphatree.codegen import build_alphabetic, is_dyadic
from alphatree.oracle import optimal_alphabetic_dp, optimal_bst_dp
from alphatree.probability import ProbDist

from strategies import dyadic_dists, prob_dists, search_dists

F = Fraction
P = ProbDist.of
VALID_ON_OPTIMUM = ("gilbert_moore", "horibe", "yeung_refined", "yeung", "dagan")


@pytest.mark.parametrize(
    "probs, value",
    [((F(1, 2), F(1, 4), F(1, 4)), F(3, 2)), ((F(1, 4),) * 4, F(2)), ((1,), F(0)), ((0, 1), F(0))],
)
def test_entropy_exact_examples(probs, value):
    assert entropy(P(probs)) == value


def test_entropy_float_for_non_dyadic():
    assert entropy(P([F(1, 3)] * 3)) == pytest.approx(math.log2(3), abs=1e-12)


def test_reference_values_three_symbols():
    report = alphabetic_bounds(P([F(1, 2), F(1, 4), F(1, 4)]))
    assert report.value("yeung_refined") == pytest.approx(2.0, abs=TOL)
    assert report.value("dagan") == pytest.approx(2.25, abs=TOL)
    assert report.value("dyadic_endpoint") == pytest.approx(1.75, abs=TOL)
    assert report["dyadic_endpoint"].exact == F(7, 4)
    assert not report["interleaved"].applicable
    with pytest.raises(KeyError):
        report.value("interleaved")


def test_dyadic_limit_rows_marked():
    report = alphabetic_bounds(P([F(1, 4)] * 4))
    assert report["interleaved"].applicable
    assert report["interleaved"].note == "via dyadic limit"
    assert report["interleaved"].exact is not None


def test_refined_endpoint_credit_needs_positive_symbols():
    assert not alphabetic_bounds(P([F(1, 2), 0, F(1, 2)]))["yeung_refined"].applicable
    assert alphabetic_bounds(P([F(1, 2), 0, F(1, 2)]))["yeung"].applicable


def test_tail_bound_only_for_zero_endpoints():
    assert alphabetic_bounds(P([0, F(1, 3), F(2, 3)]))["zero_endpoint"].applicable
    assert not alphabetic_bounds(P([F(1, 3), F(2, 3)]))["zero_endpoint"].applicable


def test_single_symbol_report_has_only_entropy():
    report = alphabetic_bounds(P([1]))
    assert report.entries == {} and report.entropy == 0


def test_horibe_and_yeung_are_incomparable():
    skewed = alphabetic_bounds(P([F(1, 2), F(1, 4), F(1, 4)]))
    assert skewed.value("yeung_refined") < skewed.value("horibe") - TOL
    flat = alphabetic_bounds(P([F(1, 3)] * 3))
    assert flat.value("horibe") < flat.value("yeung_refined") - TOL


def test_bump_counts_tie_goes_left():
    assert bump_counts([F(1, 3)] * 3) == [1, 1, 0]
    assert bump_counts([F(1, 2), F(1, 8), F(3, 8)]) == [0, 2, 0]
    sets = bump_sets([F(1, 2), F(1, 8), F(3, 8)])
    assert sets == {"S1": {1}, "S2": set(), "S3": set(), "S4": set()}


@given(prob_dists(min_m=2, max_m=12, max_weight=48, allow_zero=True))
def test_bump_counts_reproduce_neighbour_minima(phi):
    probs = list(phi)
    counts = bump_counts(probs)
    assert sum(c * p for c, p in zip(counts, probs)) == sum_adjacent_min(probs)


@given(prob_dists(min_m=2, max_m=10, max_weight=48))
def test_interleaved_bound_dominates_older_bounds(phi):
    report = alphabetic_bounds(phi)
    if not report["interleaved"].applicable:
        return
    inter = report.value("interleaved")
    assert inter <= report.value("yeung_refined") + TOL
    assert inter <= report.value("dagan") + TOL
    assert report.value("interleaved_loose") <= report.value("dagan") + TOL


@given(prob_dists(min_m=2, max_m=7, max_weight=30, allow_zero=True))
def test_optimum_respects_valid_upper_bounds(phi):
    report = alphabetic_bounds(phi)
    best = optimal_alphabetic_dp(phi)[0]
    for key in VALID_ON_OPTIMUM:
        assert report[key].satisfied_by(best) is not False, key
    cost = build_alphabetic(phi).cost
    for e in report.applicable():
        if e.guaranteed:
            assert e.satisfied_by(cost), e.key
            assert e.satisfied_by(best), e.key


@given(dyadic_dists(min_m=2, max_m=6))
def test_dyadic_entropy_is_exact(phi):
    H = entropy(phi)
    assert isinstance(H, Fraction)
    assert float(H) == pytest.approx(entropy_float(list(phi)), abs=1e-12)


def test_mehlhorn_on_uniform_seven():
    sigma = SearchDist((F(1, 7),) * 7)
    report = bst_bounds(sigma)
    assert report.value("mehlhorn") == pytest.approx(math.log2(7) + 1 + 4 / 7, abs=TOL)


def test_de_prisco_always_flagged():
    report = bst_bounds(SearchDist((F(1, 7),) * 7))
    assert report["de_prisco"].valid is False
    assert "INVALID" in report["de_prisco"].note


def test_corrected_bound_without_successful_searches():
    # with every q zero, the corrected bound is the loose interleaved bound on p
    p = [F(1, 6), F(1, 3), F(1, 6), F(1, 3)]
    sigma = SearchDist.from_pq(p, [0, 0, 0])
    alpha = alphabetic_bounds(P(p))
    assert bst_bounds(sigma).value("bst_corrected") == pytest.approx(
        alpha.value("interleaved_loose"), abs=TOL
    )


def test_lower_bound_reported_unclamped():
    report = bst_bounds(SearchDist((0, 1, 0)))
    # H = 0 and all mass on the key: the bound is exactly the q-mass
    assert report.value("bst_lower") == pytest.approx(1.0, abs=TOL)
    degenerate = bst_bounds(SearchDist((F(1, 2), 0, F(1, 2))))
    assert degenerate.value("bst_lower") < 0


@given(search_dists(max_n=6))
def test_bst_bound_sandwich(sigma):
    report = bst_bounds(sigma)
    cost = build_bst(sigma).cost
    best = optimal_bst_dp(sigma)[0]
    assert best <= cost
    assert float(cost) <= report.value("bst_corrected") + TOL
    assert report.value("bst_corrected") <= report.value("mehlhorn") + TOL
    assert float(best) >= report.value("bst_lower") - TOL
    assert report.value("bst_gap") == pytest.approx(
        report.value("bst_corrected") - report.value("bst_lower"), abs=TOL
    )
