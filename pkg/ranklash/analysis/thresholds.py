"""Critical discount factors and cost thresholds for sustaining mutual restraint."""

import enum
import math
from dataclasses import dataclass, field

from ranklash.analysis.errors import ParameterError, StrategyError
from ranklash.analysis.game_core import CostTiming, check_discount, check_unit, eval_cost

DENOMINATOR_EPSILON = 1e-15


class Regime(enum.Enum):
    ALWAYS_COOPERATE = "AlwaysCooperate"
    INTERIOR = "Interior"
    NEVER_COOPERATE = "NeverCooperate"


class Strategy(enum.Enum):
    GRIM = "grim"
    TIT_FOR_TAT = "tft"
    ONE_TIME_GRIM = "one-time"


class OptimalDefection(enum.Enum):
    ONE = "One"
    INFINITY = "Infinity"


class TftBehavior(enum.Enum):
    COOPERATE = "Cooperate"
    DEFECT_ONCE = "DefectOnce"
    DEFECT_FOREVER = "DefectForever"


class ProbeVariable(enum.Enum):
    COST = "cost"
    BETA = "beta"
    P = "p"


@dataclass(frozen=True)
class ThresholdReport:
    delta_star: float
    regime: Regime
    binding_player: int = None
    notes: tuple = ()
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TftKClassification:
    threshold: float
    optimal_k: OptimalDefection


@dataclass(frozen=True)
class CostThreshold:
    min_cost: float
    raw_value: float
    clamped: bool


@dataclass(frozen=True)
class AsymmetricThresholds:
    reports: tuple
    sustainable: bool
    binding_player: int


@dataclass(frozen=True)
class DiscountAsymmetry:
    thresholds: tuple
    sustainable: bool
    binding_player: int


@dataclass(frozen=True)
class ProbeResult:
    sign: int
    derivative: float


def classify(delta_star):
    if delta_star <= 0:
        return Regime.ALWAYS_COOPERATE
    if delta_star >= 1:
        return Regime.NEVER_COOPERATE
    return Regime.INTERIOR


def critical_discount(gain, loss):
    """Smallest delta with loss * delta >= gain.

    gain is what a deviator earns in the first round, loss what it forgoes per
    later round. A non-positive loss means the deviation path is never worse
    afterwards, so the sign of gain decides alone.
    """
    if loss > DENOMINATOR_EPSILON:
        return gain / loss
    if gain <= 0:
        return 0.0
    return math.inf


def _report(delta_star, **kwargs):
    return ThresholdReport(delta_star=delta_star, regime=classify(delta_star), **kwargs)


def _grim_ratio(p, c, beta):
    return critical_discount(p - 2 * c, p - beta * p * p + p * p)


def delta_star_grim(params):
    if params.cost_timing is CostTiming.ONE_TIME_FIXED:
        raise StrategyError("One-time fixed cost changes the deviation path, use delta_star_one_time")
    return _report(_grim_ratio(params.p, params.c, params.beta))


def cost_threshold_grim(p, beta, delta):
    """Smallest cost at which grim trigger sustains restraint for this discount factor."""
    check_unit("Attack success rate", p)
    check_unit("Degradation factor", beta)
    check_discount(delta)
    raw = (p - delta * (p - beta * p * p + p * p)) / 2
    return CostThreshold(min_cost=max(raw, 0.0), raw_value=raw, clamped=raw < 0)


def cost_threshold_tft(p, delta):
    check_unit("Attack success rate", p)
    check_discount(delta)
    raw = (1 - delta) * p / 2
    return CostThreshold(min_cost=max(raw, 0.0), raw_value=raw, clamped=raw < 0)


def delta_star_tft(params):
    return _report(
        critical_discount(params.p - 2 * params.c, params.p),
        notes=("independent of the degradation factor",),
    )


def tft_k_classify(params, delta):
    check_discount(delta)
    if params.p == 0:
        raise ParameterError("Attack success rate must be above 0 to rank k-round defections")
    threshold = params.p * params.beta + (1 - params.p) - 2 * params.c / params.p
    optimal = OptimalDefection.ONE if delta >= threshold else OptimalDefection.INFINITY
    return TftKClassification(threshold=threshold, optimal_k=optimal)


def tft_behavior(params, delta):
    """How a deviator facing tit-for-tat behaves at this discount factor."""
    check_discount(delta)
    if params.p == 0:
        return TftBehavior.COOPERATE
    if delta >= delta_star_tft(params).delta_star:
        return TftBehavior.COOPERATE
    if tft_k_classify(params, delta).optimal_k is OptimalDefection.ONE:
        return TftBehavior.DEFECT_ONCE
    return TftBehavior.DEFECT_FOREVER


def delta_star_one_time(params):
    if params.cost_timing is not CostTiming.ONE_TIME_FIXED:
        raise StrategyError("Recurring cost, use delta_star_grim")
    if not params.cost.is_fixed:
        raise StrategyError("One-time cost is only defined for a fixed cost (exponent 0)")
    p, c, beta = params.p, params.c, params.beta
    delta_star = critical_discount(p - 2 * c, p - beta * p * p + p * p - 2 * c)
    recurring = _grim_ratio(p, c, beta)
    return _report(
        delta_star,
        notes=("one-time cost contracts the cooperation region",),
        details={"recurring_delta_star": recurring, "contracts": delta_star >= recurring},
    )


def delta_star_report(params, strategy):
    strategy = Strategy(strategy)
    if strategy is Strategy.GRIM:
        return delta_star_grim(params)
    if strategy is Strategy.TIT_FOR_TAT:
        return delta_star_tft(params)
    return delta_star_one_time(params)


def _binding(thresholds, discounts):
    first = (thresholds[0] - discounts[0], thresholds[0])
    second = (thresholds[1] - discounts[1], thresholds[1])
    return 2 if second > first else 1


def thresholds_asymmetric(profile1, profile2, beta, strategy):
    """Per-player critical discount factors when rates and costs differ."""
    check_unit("Degradation factor", beta)
    strategy = Strategy(strategy)
    if strategy is Strategy.ONE_TIME_GRIM:
        raise StrategyError("Asymmetric thresholds are defined for grim and tit-for-tat only")
    profiles = (profile1, profile2)

    values = []
    for own, other in (profiles, profiles[::-1]):
        if strategy is Strategy.GRIM:
            loss = (1 - beta) * own.p * other.p + other.p
        else:
            loss = other.p
        values.append(critical_discount(own.p - 2 * own.c, loss))

    binding = _binding(values, (profile1.delta, profile2.delta))
    reports = tuple(_report(value, binding_player=binding) for value in values)
    sustainable = all(profile.delta >= value for profile, value in zip(profiles, values))
    return AsymmetricThresholds(reports=reports, sustainable=sustainable, binding_player=binding)


def discount_asymmetry(p, cost, beta, delta1, delta2, strategy):
    """Minimum attack cost each player needs when only their patience differs."""
    strategy = Strategy(strategy)
    if strategy is Strategy.GRIM:
        thresholds = (cost_threshold_grim(p, beta, delta1), cost_threshold_grim(p, beta, delta2))
    elif strategy is Strategy.TIT_FOR_TAT:
        thresholds = (cost_threshold_tft(p, delta1), cost_threshold_tft(p, delta2))
    else:
        raise StrategyError("Discount asymmetry is defined for grim and tit-for-tat only")
    c = eval_cost(cost, p)
    sustainable = all(c >= threshold.min_cost for threshold in thresholds)
    binding = 2 if delta2 < delta1 else 1
    return DiscountAsymmetry(thresholds=thresholds, sustainable=sustainable, binding_player=binding)


def monotonicity_probe(params, variable, step=1e-5):
    """Sign of the grim threshold's partial derivative by central difference."""
    variable = ProbeVariable(variable)
    p, c, beta = params.p, params.c, params.beta

    if variable is ProbeVariable.COST:
        if c - step < 0:
            raise ParameterError("Cost must be at least the probe step away from 0")
        high, low = _grim_ratio(p, c + step, beta), _grim_ratio(p, c - step, beta)
    elif variable is ProbeVariable.BETA:
        if beta - step < 0 or beta + step > 1:
            raise ParameterError("Degradation factor must be at least the probe step inside [0, 1]")
        high, low = _grim_ratio(p, c, beta + step), _grim_ratio(p, c, beta - step)
    else:
        if p - step < 0 or p + step > 1:
            raise ParameterError("Attack success rate must be at least the probe step inside [0, 1]")
        high = _grim_ratio(p + step, eval_cost(params.cost, p + step), beta)
        low = _grim_ratio(p - step, eval_cost(params.cost, p - step), beta)

    derivative = (high - low) / (2 * step)
    if not math.isfinite(derivative) or abs(derivative) < 1e-9:
        sign = 0
    else:
        sign = 1 if derivative > 0 else -1
    return ProbeResult(sign=sign, derivative=derivative)
