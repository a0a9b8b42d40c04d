"""Discounted values of restraint and of each deviation path.

Also builds payoff curves over the attack success rate and locates the
range of rate caps that cannot lower an attacker's best deviation value.
"""

import enum
from dataclasses import dataclass

from ranklash.analysis.errors import ParameterError, StrategyError
from ranklash.analysis.game_core import check_discount, check_unit, stage_payoffs
from ranklash.analysis.numerics import bisect_root, grid_then_golden_max

PEAK_GRID_POINTS = 1001
PEAK_TOLERANCE = 1e-6
BISECTION_BRACKET = (1e-12, 1 - 1e-12)


class PatternKind(enum.Enum):
    GRIM_PATH = "grim"
    TFT_SINGLE = "tft-single"
    TFT_ALTERNATING = "tft-alternating"
    TFT_K_ROUNDS = "tft-k"
    ONE_TIME_GRIM_PATH = "one-time"


@dataclass(frozen=True)
class DefectionPattern:
    kind: PatternKind
    k: int = 1

    def __post_init__(self):
        if self.kind is PatternKind.TFT_K_ROUNDS and self.k < 1:
            raise ParameterError("Defection rounds k must be 1 or more")

    @classmethod
    def of(cls, kind, k=1):
        return cls(PatternKind(kind), k)


@dataclass(frozen=True)
class CurveSample:
    p: float
    v_c: float
    v_d: float
    gap: float


@dataclass(frozen=True)
class PeakReport:
    p_peak: float
    v_d_max: float


@dataclass(frozen=True)
class FutileReport:
    p_peak: float
    v_d_max: float
    futile_interval: tuple
    exists: bool


@dataclass(frozen=True)
class InstabilityReport:
    intervals: tuple
    near_zero: bool


def v_cooperate(params, delta):
    check_discount(delta)
    return stage_payoffs(params).R / (1 - delta)


def v_defect(params, delta, pattern):
    check_discount(delta)
    m = stage_payoffs(params)
    kind = pattern.kind

    if kind is PatternKind.GRIM_PATH:
        return m.T + delta * m.Q / (1 - delta)
    if kind is PatternKind.TFT_SINGLE:
        return m.T + delta * m.S + delta * delta * m.R / (1 - delta)
    if kind is PatternKind.TFT_ALTERNATING:
        return (m.T + delta * m.S) / (1 - delta * delta)
    if kind is PatternKind.TFT_K_ROUNDS:
        k = pattern.k
        dk = delta**k
        return m.T + (delta - dk) / (1 - delta) * m.Q + dk * m.S + dk * delta / (1 - delta) * m.R

    if not params.cost.is_fixed:
        raise StrategyError("One-time cost path is only defined for a fixed cost (exponent 0)")
    # Cost is paid in the first attack round only
    return m.T + delta * (m.Q + params.c) / (1 - delta)


def value_gap(params, delta, pattern):
    return v_defect(params, delta, pattern) - v_cooperate(params, delta)


def defection_curve(params_template, delta, p_grid, pattern):
    if not len(p_grid):
        raise ParameterError("Curve grid must contain at least one success rate")
    samples = []
    for p in p_grid:
        check_unit("Attack success rate", p)
        params = params_template.with_p(p)
        v_c = v_cooperate(params, delta)
        v_d = v_defect(params, delta, pattern)
        samples.append(CurveSample(p=p, v_c=v_c, v_d=v_d, gap=v_d - v_c))
    return samples


def _maximise(params_template, delta, pattern, cap, points=PEAK_GRID_POINTS):
    if not 0 < delta < 1:
        raise ParameterError("Discount factor must be strictly between 0 and 1, got {!r}".format(delta))

    def value(p):
        return v_defect(params_template.with_p(p), delta, pattern)

    return grid_then_golden_max(value, 0.0, cap, points, PEAK_TOLERANCE)


def peak_defection(params_template, delta, pattern, points=PEAK_GRID_POINTS):
    p_peak, v_d_max = _maximise(params_template, delta, pattern, 1.0, points)
    return PeakReport(p_peak=p_peak, v_d_max=v_d_max)


def capped_max(params_template, delta, pattern, cap, points=PEAK_GRID_POINTS):
    """Best deviation value an attacker reaches when its success rate is capped."""
    check_unit("Success rate cap", cap)
    if cap == 0:
        return v_defect(params_template.with_p(0.0), delta, pattern)
    return _maximise(params_template, delta, pattern, cap, points)[1]


def futile_defense(params_template, delta, pattern, points=PEAK_GRID_POINTS):
    peak = peak_defection(params_template, delta, pattern, points)
    exists = peak.p_peak < 1
    return FutileReport(
        p_peak=peak.p_peak,
        v_d_max=peak.v_d_max,
        futile_interval=(peak.p_peak, 1.0) if exists else None,
        exists=exists,
    )


def unstable_intervals(params_template, delta, pattern, points=PEAK_GRID_POINTS):
    """Success-rate ranges where deviating beats restraint, from a uniform grid on (0, 1]."""
    grid = [i / (points - 1) for i in range(1, points)]
    samples = defection_curve(params_template, delta, grid, pattern)

    intervals = []
    start = None
    for previous, sample in zip([None] + samples[:-1], samples):
        if sample.gap > 0 and start is None:
            start = sample.p
        elif sample.gap <= 0 and start is not None:
            intervals.append((start, previous.p))
            start = None
    if start is not None:
        intervals.append((start, samples[-1].p))

    near_zero = bool(intervals) and intervals[0][0] == grid[0]
    return InstabilityReport(intervals=tuple(intervals), near_zero=near_zero)


def indifference_discount(params, pattern, bracket=BISECTION_BRACKET):
    """Discount factor at which restraint and the deviation path are worth the same."""
    lo, hi = bracket
    return bisect_root(lambda delta: value_gap(params, delta, pattern), lo, hi)
