import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionframes import (
    InvalidBetaError,
    InvalidDeltaError,
    InvalidDimsError,
    all_pairs_failure,
    asymptotic_regime,
    beta_lower_tail,
    beta_upper_tail,
    chi2_lower_tail,
    chi2_upper_tail,
    column_norms_bound,
    delta_to_epsilon_angle,
    delta_to_epsilon_tight,
    equiangular_window,
    evaluate_bounds,
    gaussian_frame_failure,
    is_vacuous,
    net_cardinality,
    pair_failure,
    proj_mass_failure,
    ratio_two_sided,
    riesz_partition_failure,
    riesz_subset_failure,
    tightness_failure,
)

# reference values computed independently at 60 significant digits
FROZEN = {
    "chi2_upper(100,0.1)": 0.79188956633678166,
    "chi2_upper(1,0.1)": 0.99766938677283944,
    "chi2_upper(200,0.1)": 0.62708908527305613,
    "chi2_lower(100,0.1)": 0.80519832401807055,
    "chi2_lower(1000,0.3)": 1.3709590863840844e-6,
    "column_norms(100,1,0.1)": 1.6103966480361411,
    "column_norms(50,20,0.5)": 14.114643258353956,
    "net(10,0.5)": 3486784401.0,
    "riesz_subset(2,100,0.5)": 20.171344373947924,
    "riesz_subset(2,5000,0.5)": 9.3434331561258363e-44,
    "riesz_partition(64,4,64,0.5)": 221370.98536669227,
    "gaussian_frame(10,10000,0.5)": 2.3197331397827301e-81,
    "gaussian_frame(10,10,0.5)": 5662093972.7259409,
    "beta_lower(5,0.5)": 3192.3997778047955,
    "beta_upper(5,1.5)": 1.3561517334487127,
    "ratio(2,0.2)": 3.2630641154979438,
    "ratio(200,0.2)": 2.0544450854729772e-98,
    "proj_mass(4,0.2)": 79.474923297361017,
    "pair_r1(64,16,4,0.2)": 79.474923297361017,
    "pair_r2(64,16,4,0.2)": 5.2388502170343493e84,
    "all_pairs(64,16,4,0.2)": 6.2866202604412192e86,
}

REL = 1e-12


class TestChi2Tails:
    def test_frozen_values(self):
        assert chi2_upper_tail(100, 0.1) == pytest.approx(FROZEN["chi2_upper(100,0.1)"], rel=REL)
        assert chi2_upper_tail(1, 0.1) == pytest.approx(FROZEN["chi2_upper(1,0.1)"], rel=REL)
        assert chi2_upper_tail(200, 0.1) == pytest.approx(FROZEN["chi2_upper(200,0.1)"], rel=REL)
        assert chi2_lower_tail(100, 0.1) == pytest.approx(FROZEN["chi2_lower(100,0.1)"], rel=REL)
        assert chi2_lower_tail(1000, 0.3) == pytest.approx(FROZEN["chi2_lower(1000,0.3)"], rel=REL)

    def test_lower_tail_is_never_tighter(self):
        for delta in (0.05, 0.2, 0.5, 0.9):
            for n in (1, 10, 1000):
                assert chi2_lower_tail(n, delta) >= chi2_upper_tail(n, delta)

    @settings(max_examples=50, deadline=None)
    @given(
        st.integers(min_value=1, max_value=10**6),
        st.floats(min_value=0.05, max_value=0.7),
    )
    def test_decreasing_in_n(self, n, delta):
        assert chi2_upper_tail(n + 1, delta) <= chi2_upper_tail(n, delta)
        assert chi2_lower_tail(n + 1, delta) <= chi2_lower_tail(n, delta)

    def test_validation(self):
        with pytest.raises(InvalidDeltaError):
            chi2_upper_tail(10, 0.0)
        with pytest.raises(InvalidDimsError):
            chi2_lower_tail(0, 0.1)


class TestUnionAndNetBounds:
    def test_column_norms_frozen(self):
        assert column_norms_bound(100, 1, 0.1) == pytest.approx(
            FROZEN["column_norms(100,1,0.1)"], rel=REL
        )
        assert column_norms_bound(50, 20, 0.5) == pytest.approx(
            FROZEN["column_norms(50,20,0.5)"], rel=REL
        )

    def test_column_norms_is_m_times_single(self):
        single = column_norms_bound(64, 1, 0.2)
        assert column_norms_bound(64, 9, 0.2) == pytest.approx(9.0 * single, rel=1e-14)

    def test_net_cardinality(self):
        assert net_cardinality(2, 1.0) == pytest.approx(25.0, rel=REL)
        assert net_cardinality(1, 4.0) == pytest.approx(2.0, rel=REL)
        assert net_cardinality(10, 0.5) == pytest.approx(FROZEN["net(10,0.5)"], rel=REL)

    def test_net_grows_with_dimension_and_precision(self):
        assert net_cardinality(5, 0.3) > net_cardinality(4, 0.3)
        assert net_cardinality(5, 0.2) > net_cardinality(5, 0.3)

    def test_riesz_subset_frozen(self):
        assert riesz_subset_failure(2, 100, 0.5) == pytest.approx(
            FROZEN["riesz_subset(2,100,0.5)"], rel=REL
        )
        assert riesz_subset_failure(2, 5000, 0.5) == pytest.approx(
            FROZEN["riesz_subset(2,5000,0.5)"], rel=REL
        )

    def test_riesz_partition_frozen_and_linear(self):
        assert riesz_partition_failure(64, 4, 64, 0.5) == pytest.approx(
            FROZEN["riesz_partition(64,4,64,0.5)"], rel=REL
        )
        single = riesz_subset_failure(4, 64, 0.5)
        assert riesz_partition_failure(1, 4, 64, 0.5) == single
        assert riesz_partition_failure(7, 4, 64, 0.5) == 7 * single

    def test_gaussian_frame_frozen(self):
        assert gaussian_frame_failure(10, 10000, 0.5) == pytest.approx(
            FROZEN["gaussian_frame(10,10000,0.5)"], rel=REL
        )
        assert gaussian_frame_failure(10, 10, 0.5) == pytest.approx(
            FROZEN["gaussian_frame(10,10,0.5)"], rel=REL
        )

    def test_log_space_survives_huge_parameters(self):
        # exponent arithmetic must not raise even when the value under- or
        # overflows; a huge bound saturates to inf and reads as vacuous
        assert gaussian_frame_failure(10, 10**6, 0.5) == 0.0
        assert math.isinf(gaussian_frame_failure(10**6, 10**6, 0.5))
        assert is_vacuous(gaussian_frame_failure(10**6, 10**6, 0.5))
        assert math.isinf(net_cardinality(10**6, 0.01))

    def test_validation(self):
        with pytest.raises(InvalidDeltaError):
            riesz_subset_failure(2, 10, 1.0)
        with pytest.raises(InvalidDimsError):
            riesz_subset_failure(11, 10, 0.5)
        with pytest.raises(InvalidDimsError):
            riesz_partition_failure(0, 2, 10, 0.5)


class TestTightness:
    def test_total_is_exact_sum(self):
        for n, k, s, delta in [(64, 64, 4, 0.1), (16, 16, 2, 0.3), (100, 50, 2, 0.5)]:
            tb = tightness_failure(n, k, s, delta)
            expected = gaussian_frame_failure(n, k * s, delta) + riesz_partition_failure(
                k, s, n, delta
            )
            assert tb.total == expected  # bitwise: same formula composition

    def test_window_frozen(self):
        tb = tightness_failure(64, 64, 4, 0.1)
        assert tb.frame_lower == pytest.approx(2.2578957202151097, rel=REL)
        assert tb.frame_upper == pytest.approx(7.086244, rel=REL)
        assert tb.epsilon_bound == pytest.approx(0.771561, rel=REL)

    def test_window_brackets_aspect_ratio(self):
        tb = tightness_failure(32, 32, 2, 0.2)
        aspect = 64.0 / 32.0
        assert tb.frame_lower < aspect < tb.frame_upper

    def test_epsilon_maps(self):
        assert delta_to_epsilon_tight(0.1) == pytest.approx(0.771561, rel=REL)
        assert delta_to_epsilon_angle(0.1) == pytest.approx(0.331, rel=REL)
        assert delta_to_epsilon_tight(0.1) == pytest.approx(
            (1.0 + delta_to_epsilon_angle(0.1)) ** 2 - 1.0, rel=1e-14
        )


class TestSpectrumTails:
    def test_beta_lower_frozen(self):
        # at s=1 the exponent is exactly 1: 0 + 1/2 + 1/2
        assert beta_lower_tail(1, 0.5) == pytest.approx(math.e, rel=REL)
        assert beta_lower_tail(5, 0.5) == pytest.approx(FROZEN["beta_lower(5,0.5)"], rel=REL)

    def test_beta_upper_frozen(self):
        assert beta_upper_tail(5, 1.5) == pytest.approx(FROZEN["beta_upper(5,1.5)"], rel=REL)
        # exponent ~ -1831: the true value underflows to zero in doubles
        assert beta_upper_tail(200, 1.5) == 0.0

    def test_ratio_frozen(self):
        assert ratio_two_sided(2, 0.2) == pytest.approx(FROZEN["ratio(2,0.2)"], rel=REL)
        assert ratio_two_sided(200, 0.2) == pytest.approx(FROZEN["ratio(200,0.2)"], rel=REL)

    def test_proj_mass_is_2s_times_ratio(self):
        assert proj_mass_failure(4, 0.2) == pytest.approx(FROZEN["proj_mass(4,0.2)"], rel=REL)
        assert proj_mass_failure(4, 0.2) == 8.0 * ratio_two_sided(4, 0.2)

    def test_validation(self):
        with pytest.raises(InvalidBetaError):
            beta_lower_tail(3, 1.0)
        with pytest.raises(InvalidBetaError):
            beta_upper_tail(3, 1.0)
        with pytest.raises(InvalidDeltaError):
            ratio_two_sided(3, 0.0)


class TestPairBounds:
    def test_pair_frozen(self):
        pb = pair_failure(64, 16, 4, 0.2)
        assert pb.r1 == pytest.approx(FROZEN["pair_r1(64,16,4,0.2)"], rel=REL)
        assert pb.r2 == pytest.approx(FROZEN["pair_r2(64,16,4,0.2)"], rel=REL)

    def test_pair_total_identity(self):
        pb = pair_failure(32, 8, 4, 0.3)
        assert pb.total == pb.r1 + pb.r2
        assert pb.r1 == proj_mass_failure(4, 0.3)

    def test_pair_window_matches_angle_window(self):
        pb = pair_failure(40, 8, 10, 0.2)
        expected = equiangular_window(delta_to_epsilon_angle(0.2), 40, 10)
        assert pb.window == expected

    def test_all_pairs_frozen_and_identity(self):
        assert all_pairs_failure(64, 16, 4, 0.2) == pytest.approx(
            FROZEN["all_pairs(64,16,4,0.2)"], rel=REL
        )
        pb = pair_failure(64, 16, 4, 0.2)
        assert all_pairs_failure(64, 16, 4, 0.2) == pb.total * 120.0

    def test_validation(self):
        with pytest.raises(InvalidDimsError):
            pair_failure(64, 1, 4, 0.2)  # a pair needs two subspaces
        with pytest.raises(InvalidDimsError):
            pair_failure(64, 2, 4, 0.2)  # n > k*s
        with pytest.raises(InvalidDimsError):
            all_pairs_failure(64, 2, 4, 0.2)


class TestRegime:
    def test_frozen_point(self):
        rc = asymptotic_regime(100, 10**6, 10, 0.2)
        assert rc.rhs == pytest.approx(0.0073333333333333333, rel=REL)
        assert rc.lhs_logcount == pytest.approx(0.71891759051125552, rel=REL)
        assert rc.lhs_aspect == pytest.approx(3.0445224377234230e-5, rel=REL)
        assert not rc.ok_logcount
        assert rc.ok_aspect

    def test_logcount_regime_reachable(self):
        # large ambient dimension, few subspaces per dimension
        rc = asymptotic_regime(10**4, 100, 10, 0.2)
        assert rc.ok_logcount
        assert not rc.ok_aspect

    def test_rejects_flat_exponent(self):
        with pytest.raises(InvalidDeltaError):
            asymptotic_regime(100, 10, 2, 0.75)


class TestVacuity:
    def test_threshold(self):
        assert is_vacuous(1.0)
        assert is_vacuous(2.5)
        assert is_vacuous(math.inf)
        assert is_vacuous(math.nan)
        assert not is_vacuous(0.999999)
        assert not is_vacuous(0.0)


class TestEvaluateBounds:
    def test_composition_identities(self):
        bs = evaluate_bounds(16, 2, 16, 0.2)
        assert bs.rows == 32
        assert bs.chi2_upper == chi2_upper_tail(16, 0.2)
        assert bs.riesz_partition == riesz_partition_failure(16, 2, 16, 0.2)
        assert bs.tightness.total == tightness_failure(16, 16, 2, 0.2).total
        assert bs.pair.total == pair_failure(16, 16, 2, 0.2).total
        assert bs.all_pairs == all_pairs_failure(16, 16, 2, 0.2)

    def test_beta_specialization(self):
        bs = evaluate_bounds(16, 2, 16, 0.25)
        assert bs.beta_lower == beta_lower_tail(2, 1.0 / 1.25)
        assert bs.beta_upper == beta_upper_tail(2, 1.25)

    def test_vacuity_map(self):
        flags = evaluate_bounds(16, 2, 16, 0.2).vacuity()
        assert flags["chi2_upper"] is False
        assert flags["gaussian_frame"] is True
        assert set(flags) >= {"tightness_total", "pair_total", "all_pairs"}

    def test_regime_none_for_large_delta(self):
        assert evaluate_bounds(16, 2, 16, 0.8).regime is None
        assert evaluate_bounds(16, 2, 16, 0.2).regime is not None

    def test_explicit_rows_must_match(self):
        evaluate_bounds(16, 2, 16, 0.2, m=32)
        with pytest.raises(InvalidDimsError):
            evaluate_bounds(16, 2, 16, 0.2, m=33)

    def test_validation(self):
        with pytest.raises(InvalidDimsError):
            evaluate_bounds(16, 2, 1, 0.2)
        with pytest.raises(InvalidDimsError):
            evaluate_bounds(64, 2, 4, 0.2)  # n > k*s
        with pytest.raises(InvalidDeltaError):
            evaluate_bounds(16, 2, 16, 0.0)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=64),
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=2, max_value=128),
    st.floats(min_value=0.01, max_value=0.99),
)
def test_bounds_are_nonnegative_and_identities_hold(n, s, k, delta):
    if s > n or n > k * s:
        n = min(n, k * s)
        s = min(s, n)
    pb = pair_failure(n, k, s, delta)
    assert pb.r1 >= 0.0 and pb.r2 >= 0.0
    assert all_pairs_failure(n, k, s, delta) == pb.total * (k * (k - 1) / 2.0)
    tb = tightness_failure(n, k, s, delta)
    assert tb.total == gaussian_frame_failure(n, k * s, delta) + riesz_partition_failure(
        k, s, n, delta
    )
    assert tb.frame_lower <= k * s / n <= tb.frame_upper
    lo, hi = pb.window
    assert lo < 1.0 < hi
