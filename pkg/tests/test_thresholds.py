import math

import numpy as np
import pytest

from ranklash.analysis.errors import ParameterError, StrategyError
from ranklash.analysis.game_core import CostModel, CostTiming, GameParams, PlayerProfile
from ranklash.analysis.thresholds import (
    OptimalDefection,
    Regime,
    Strategy,
    TftBehavior,
    classify,
    cost_threshold_grim,
    cost_threshold_tft,
    critical_discount,
    delta_star_grim,
    delta_star_one_time,
    delta_star_report,
    delta_star_tft,
    discount_asymmetry,
    monotonicity_probe,
    tft_behavior,
    tft_k_classify,
    thresholds_asymmetric,
)
from ranklash.analysis.value_funcs import DefectionPattern, PatternKind, indifference_discount, v_defect


def game(p, c, beta=0.4, exponent=0, one_time=False):
    timing = CostTiming.ONE_TIME_FIXED if one_time else CostTiming.RECURRING
    return GameParams(p=p, cost=CostModel(c, exponent), beta=beta, cost_timing=timing)


def test_classify_boundaries():
    assert classify(0.0) is Regime.ALWAYS_COOPERATE
    assert classify(-0.5) is Regime.ALWAYS_COOPERATE
    assert classify(0.5) is Regime.INTERIOR
    assert classify(1.0) is Regime.NEVER_COOPERATE
    assert classify(math.inf) is Regime.NEVER_COOPERATE


def test_critical_discount_degenerate_loss():
    assert critical_discount(0.2, 0.0) == math.inf
    assert critical_discount(-0.2, 0.0) == 0.0
    assert critical_discount(0.0, 0.0) == 0.0


def test_grim_threshold():
    report = delta_star_grim(game(0.5, 0.1))
    assert report.delta_star == pytest.approx(0.461538, abs=1e-6)
    assert report.regime is Regime.INTERIOR


def test_grim_threshold_without_temptation():
    report = delta_star_grim(game(0.5, 0.25))
    assert report.delta_star == 0
    assert report.regime is Regime.ALWAYS_COOPERATE


def test_grim_threshold_without_cost_or_degradation():
    report = delta_star_grim(game(0.5, 0.0, beta=1.0))
    assert report.delta_star == pytest.approx(1.0)
    assert report.regime is Regime.NEVER_COOPERATE


def test_grim_threshold_at_zero_rate():
    assert delta_star_grim(game(0.0, 0.0)).regime is Regime.ALWAYS_COOPERATE
    assert delta_star_grim(game(0.0, 0.1)).regime is Regime.ALWAYS_COOPERATE


def test_grim_rejects_one_time_timing():
    with pytest.raises(StrategyError):
        delta_star_grim(game(0.5, 0.1, one_time=True))


def test_grim_threshold_matches_bisection():
    rng = np.random.default_rng(5)
    pattern = DefectionPattern(PatternKind.GRIM_PATH)
    checked = 0
    for p, beta, c in rng.uniform(0.05, 0.95, (300, 3)) * (1, 1, 0.4):
        params = game(p, c, beta)
        report = delta_star_grim(params)
        if 1e-3 < report.delta_star < 1 - 1e-3:
            assert indifference_discount(params, pattern) == pytest.approx(report.delta_star, abs=1e-9)
            checked += 1
    assert checked > 50


@pytest.mark.parametrize(
    "strategy, kind, exponents",
    [
        (Strategy.GRIM, PatternKind.GRIM_PATH, (0, 1, 2)),
        (Strategy.TIT_FOR_TAT, PatternKind.TFT_SINGLE, (0, 1, 2)),
        (Strategy.ONE_TIME_GRIM, PatternKind.ONE_TIME_GRIM_PATH, (0,)),
    ],
)
def test_closed_form_thresholds_match_bisection(strategy, kind, exponents):
    rng = np.random.default_rng(17)
    pattern = DefectionPattern(kind)
    checked = 0
    for _ in range(1000):
        p, beta = rng.uniform(0.05, 0.95, 2)
        a = rng.uniform(0, 0.3)
        exponent = int(rng.choice(exponents))
        params = game(p, a, beta, exponent, one_time=strategy is Strategy.ONE_TIME_GRIM)
        report = delta_star_report(params, strategy)
        if 1e-3 < report.delta_star < 1 - 1e-3:
            assert indifference_discount(params, pattern) == pytest.approx(report.delta_star, abs=1e-6)
            checked += 1
    assert checked > 100


def test_grim_threshold_falls_with_cost_and_rises_with_beta():
    rng = np.random.default_rng(9)
    for p, beta in rng.uniform(0.05, 0.95, (200, 2)):
        low, high = delta_star_grim(game(p, 0.01, beta)), delta_star_grim(game(p, 0.02, beta))
        assert high.delta_star <= low.delta_star
        if beta < 0.9:
            assert delta_star_grim(game(p, 0.01, beta + 0.05)).delta_star >= low.delta_star


def test_cost_threshold_grim():
    result = cost_threshold_grim(0.5, 0.4, 0.6)
    assert result.min_cost == pytest.approx(0.055)
    assert not result.clamped


def test_cost_threshold_grim_clamps():
    result = cost_threshold_grim(0.5, 0.4, 0.999)
    assert result.raw_value < 0
    assert result.min_cost == 0
    assert result.clamped


def test_cost_threshold_myopic():
    assert cost_threshold_grim(0.5, 0.4, 0.0).min_cost == pytest.approx(0.25)


def test_cost_threshold_round_trips_through_grim_threshold():
    result = cost_threshold_grim(0.5, 0.4, 0.6)
    assert delta_star_grim(game(0.5, result.min_cost)).delta_star == pytest.approx(0.6)


def test_cost_threshold_tft():
    assert cost_threshold_tft(0.5, 0.6).min_cost == pytest.approx(0.1)


def test_tft_threshold():
    report = delta_star_tft(game(0.5, 0.1))
    assert report.delta_star == pytest.approx(0.6)
    assert "independent of the degradation factor" in report.notes
    assert delta_star_tft(game(0.5, 0.25)).regime is Regime.ALWAYS_COOPERATE
    assert delta_star_tft(game(0.5, 0.0)).regime is Regime.NEVER_COOPERATE


def test_tft_threshold_ignores_beta():
    assert delta_star_tft(game(0.7, 0.1, beta=0.1)) == delta_star_tft(game(0.7, 0.1, beta=0.9))


def test_tft_k_classification():
    result = tft_k_classify(game(0.5, 0.1), 0.6)
    assert result.threshold == pytest.approx(0.3)
    assert result.optimal_k is OptimalDefection.ONE
    assert tft_k_classify(game(0.5, 0.1), 0.2).optimal_k is OptimalDefection.INFINITY


def test_tft_k_classification_without_cost():
    result = tft_k_classify(game(0.5, 0.0, beta=1.0), 0.99)
    assert result.threshold == pytest.approx(1.0)
    assert result.optimal_k is OptimalDefection.INFINITY


def test_tft_k_needs_positive_rate():
    with pytest.raises(ParameterError):
        tft_k_classify(game(0.0, 0.1), 0.5)


def test_tft_k_one_round_or_forever():
    rng = np.random.default_rng(41)
    draws = rng.uniform((0.05, 0.05, 0.0, 0.01), (0.95, 0.95, 0.3, 0.95), (200, 4))
    for p, beta, c, delta in draws:
        params = game(p, c, beta)
        result = tft_k_classify(params, delta)
        if abs(delta - result.threshold) < 1e-6:
            continue
        values = [v_defect(params, delta, DefectionPattern(PatternKind.TFT_K_ROUNDS, k)) for k in range(1, 51)]
        values.append(v_defect(params, delta, DefectionPattern(PatternKind.GRIM_PATH)))
        if result.optimal_k is OptimalDefection.ONE:
            assert int(np.argmax(values)) == 0
        else:
            steps = np.diff(values)
            assert steps[0] > 0
            assert np.all(steps >= -1e-12)
            assert values[-1] >= max(values) - 1e-12


def test_tft_behavior():
    params = game(0.5, 0.1)
    assert tft_behavior(params, 0.7) is TftBehavior.COOPERATE
    assert tft_behavior(params, 0.4) is TftBehavior.DEFECT_ONCE
    assert tft_behavior(params, 0.2) is TftBehavior.DEFECT_FOREVER
    assert tft_behavior(game(0.0, 0.1), 0.2) is TftBehavior.COOPERATE


def test_one_time_threshold():
    report = delta_star_one_time(game(0.5, 0.1, one_time=True))
    assert report.delta_star == pytest.approx(0.666667, abs=1e-6)
    assert report.details["contracts"]


def test_one_time_threshold_equals_grim_without_cost():
    one_time = delta_star_one_time(game(0.5, 0.0, one_time=True)).delta_star
    assert one_time == delta_star_grim(game(0.5, 0.0)).delta_star
    assert one_time == pytest.approx(0.769231, abs=1e-6)


def test_one_time_threshold_without_temptation():
    assert delta_star_one_time(game(0.5, 0.25, one_time=True)).regime is Regime.ALWAYS_COOPERATE


def test_one_time_threshold_needs_fixed_cost():
    with pytest.raises(StrategyError):
        delta_star_one_time(game(0.5, 0.1, exponent=1, one_time=True))
    with pytest.raises(StrategyError):
        delta_star_one_time(game(0.5, 0.1))


def test_one_time_contracts_region():
    rng = np.random.default_rng(13)
    for p, beta, c in rng.uniform(0.05, 0.95, (200, 3)) * (1, 1, 0.3):
        one_time = delta_star_one_time(game(p, c, beta, one_time=True)).delta_star
        recurring = delta_star_grim(game(p, c, beta)).delta_star
        if recurring > 0:
            assert one_time >= recurring


def test_report_dispatch():
    assert delta_star_report(game(0.5, 0.1), "grim") == delta_star_grim(game(0.5, 0.1))
    assert delta_star_report(game(0.5, 0.1), Strategy.TIT_FOR_TAT) == delta_star_tft(game(0.5, 0.1))


def test_asymmetric_rates():
    result = thresholds_asymmetric(
        PlayerProfile(p=0.3, cost=CostModel(0.1), delta=0.9),
        PlayerProfile(p=0.7, cost=CostModel(0.1), delta=0.9),
        0.4,
        Strategy.GRIM,
    )
    first, second = result.reports
    assert first.delta_star == pytest.approx(0.1 / 0.826)
    assert second.delta_star == pytest.approx(0.5 / 0.426)
    assert second.regime is Regime.NEVER_COOPERATE
    assert result.binding_player == 2
    assert not result.sustainable


def test_asymmetric_identical_profiles():
    profile = PlayerProfile(p=0.5, cost=CostModel(0.1), delta=0.5)
    result = thresholds_asymmetric(profile, profile, 0.4, "grim")
    expected = delta_star_grim(game(0.5, 0.1)).delta_star
    assert result.reports[0].delta_star == pytest.approx(expected)
    assert result.reports[1].delta_star == pytest.approx(expected)
    assert result.binding_player == 1
    assert result.sustainable


def test_asymmetric_costs_cheaper_attacker_binds():
    result = thresholds_asymmetric(
        PlayerProfile(p=0.5, cost=CostModel(0.05)), PlayerProfile(p=0.5, cost=CostModel(0.2)), 0.4, "grim"
    )
    assert result.reports[0].delta_star == pytest.approx(0.4 / 0.65)
    assert result.reports[1].delta_star == pytest.approx(0.1 / 0.65)
    assert result.binding_player == 1


def clamped(report):
    return min(max(report.delta_star, 0.0), 1.0)


@pytest.mark.parametrize("strategy", [Strategy.GRIM, Strategy.TIT_FOR_TAT])
def test_stronger_attacker_needs_more_patience(strategy):
    rng = np.random.default_rng(23)
    for _ in range(500):
        p1, p2 = np.sort(rng.uniform(0.05, 0.95, 2))
        c, beta = rng.uniform(0, 0.3), rng.uniform(0.05, 0.95)
        profiles = PlayerProfile(p=p1, cost=CostModel(c)), PlayerProfile(p=p2, cost=CostModel(c))
        first, second = thresholds_asymmetric(*profiles, beta, strategy).reports
        # Raw values can invert when both players always cooperate
        assert clamped(second) >= clamped(first)


@pytest.mark.parametrize("strategy", [Strategy.GRIM, Strategy.TIT_FOR_TAT])
def test_cheaper_attacker_binds(strategy):
    rng = np.random.default_rng(29)
    for _ in range(500):
        c1, c2 = np.sort(rng.uniform(0, 0.3, 2))
        p, beta, delta = rng.uniform(0.05, 0.95, 3)
        result = thresholds_asymmetric(
            PlayerProfile(p=p, cost=CostModel(c1), delta=delta),
            PlayerProfile(p=p, cost=CostModel(c2), delta=delta),
            beta,
            strategy,
        )
        assert result.binding_player == 1


def test_identical_profiles_reduce_to_symmetric_thresholds():
    rng = np.random.default_rng(31)
    for p, beta, c in rng.uniform(0.05, 0.95, (500, 3)) * (1, 1, 0.3):
        profile = PlayerProfile(p=p, cost=CostModel(c))
        grim = thresholds_asymmetric(profile, profile, beta, Strategy.GRIM).reports[0].delta_star
        tft = thresholds_asymmetric(profile, profile, beta, Strategy.TIT_FOR_TAT).reports[0].delta_star
        assert grim == pytest.approx(delta_star_grim(game(p, c, beta)).delta_star, abs=1e-12)
        assert tft == pytest.approx(delta_star_tft(game(p, c, beta)).delta_star, abs=1e-12)


def test_asymmetric_tft_with_harmless_opponent():
    result = thresholds_asymmetric(PlayerProfile(p=0.5, cost=CostModel(0.1)), PlayerProfile(p=0.0), 0.4, "tft")
    assert result.reports[0].regime is Regime.NEVER_COOPERATE
    assert result.reports[1].regime is Regime.ALWAYS_COOPERATE


def test_discount_asymmetry_impatient_player_binds():
    result = discount_asymmetry(0.5, CostModel(0.05), 0.4, 0.8, 0.3, "grim")
    assert result.binding_player == 2
    assert result.thresholds[1].min_cost > result.thresholds[0].min_cost
    assert not result.sustainable


def test_probe_signs():
    params = game(0.5, 0.1)
    assert monotonicity_probe(params, "cost").sign == -1
    assert monotonicity_probe(params, "beta").sign == 1


def test_probe_rate_changes_sign_for_low_beta():
    # Interior maximum of the grim threshold near p = 0.7385 when c = 0.1 and beta = 0.2
    assert monotonicity_probe(game(0.6, 0.1, beta=0.2), "p").sign == 1
    assert monotonicity_probe(game(0.9, 0.1, beta=0.2), "p").sign == -1


def test_probe_near_boundary():
    with pytest.raises(ParameterError):
        monotonicity_probe(game(0.5, 0.0), "cost")
    with pytest.raises(ParameterError):
        monotonicity_probe(game(0.5, 0.1, beta=1.0), "beta")
