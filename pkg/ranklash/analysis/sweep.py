"""Cooperation regions over the (success rate, discount factor) plane."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from ranklash.analysis.errors import ParameterError, StrategyError
from ranklash.analysis.game_core import CostModel, CostTiming, GameParams, check_unit
from ranklash.analysis.thresholds import Strategy, delta_star_report
from ranklash.analysis.value_funcs import DefectionPattern, PatternKind

logger = logging.getLogger(__name__)

DEFAULT_POINTS = 401
FIGURE_BETAS = (0.2, 0.4, 0.6, 0.8)
FIGURE_DELTAS = (0.3, 0.6, 0.9)
FIGURE_COSTS = (CostModel(0.1, 0), CostModel(0.1, 1), CostModel(0.1, 2))


@dataclass(frozen=True)
class Axis:
    """Evenly spaced cell centres, inset half a cell from each end."""

    lo: float = 0.0
    hi: float = 1.0
    n_points: int = DEFAULT_POINTS

    def __post_init__(self):
        check_unit("Axis bound", self.lo)
        check_unit("Axis bound", self.hi)
        if not self.lo < self.hi:
            raise ParameterError("Axis lower bound must be below its upper bound")
        if self.n_points < 2:
            raise ParameterError("Axis needs at least 2 points")

    def values(self):
        width = (self.hi - self.lo) / self.n_points
        return self.lo + (np.arange(self.n_points) + 0.5) * width

    def edges(self):
        return np.linspace(self.lo, self.hi, self.n_points + 1)


@dataclass(frozen=True)
class SweepSpec:
    strategy: Strategy
    cost: CostModel
    beta: float
    p_axis: Axis = field(default_factory=Axis)
    delta_axis: Axis = field(default_factory=Axis)

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        check_unit("Degradation factor", self.beta)
        if self.strategy is Strategy.ONE_TIME_GRIM and not self.cost.is_fixed:
            raise StrategyError("One-time cost is only defined for a fixed cost (exponent 0)")

    def params(self, p):
        timing = CostTiming.RECURRING
        if self.strategy is Strategy.ONE_TIME_GRIM:
            timing = CostTiming.ONE_TIME_FIXED
        return GameParams(p=float(p), cost=self.cost, beta=self.beta, cost_timing=timing)


@dataclass(frozen=True)
class RegionGrid:
    spec: SweepSpec
    p_values: np.ndarray
    delta_values: np.ndarray
    cells: np.ndarray
    delta_star_row: np.ndarray
    regimes: tuple


@dataclass(frozen=True)
class BoundaryPoint:
    p: float
    delta_star: float
    regime: str


@dataclass(frozen=True)
class CurvePanel:
    params: GameParams
    delta: float
    pattern: DefectionPattern


def _threshold(spec, p):
    return delta_star_report(spec.params(p), spec.strategy)


def region_sweep(spec, threads=None):
    p_values = spec.p_axis.values()
    delta_values = spec.delta_axis.values()
    logger.debug("Sweeping %s over %dx%d cells", spec.strategy.value, len(p_values), len(delta_values))

    with ThreadPoolExecutor(max_workers=threads or os.cpu_count() or 1) as executor:
        reports = list(executor.map(partial(_threshold, spec), p_values))

    delta_star_row = np.array([report.delta_star for report in reports])
    # Weak inequality: a player exactly at the threshold restrains
    cells = delta_values[np.newaxis, :] >= delta_star_row[:, np.newaxis]
    return RegionGrid(
        spec=spec,
        p_values=p_values,
        delta_values=delta_values,
        cells=cells,
        delta_star_row=delta_star_row,
        regimes=tuple(report.regime.value for report in reports),
    )


def region_area(grid):
    return float(np.count_nonzero(grid.cells)) / grid.cells.size


def boundary_extract(grid):
    clamped = np.clip(grid.delta_star_row, 0.0, 1.0)
    return [
        BoundaryPoint(p=float(p), delta_star=float(value), regime=regime)
        for p, value, regime in zip(grid.p_values, clamped, grid.regimes)
    ]


def figure_panels(name):
    """Named panel sets for the standard region and payoff-curve figures, as (label, panel) pairs."""
    if name in ("cooperation-region", "tft-region"):
        strategy = Strategy.GRIM if name == "cooperation-region" else Strategy.TIT_FOR_TAT
        return [
            ("beta{:g}-cost{}".format(beta, cost.label()), SweepSpec(strategy, cost, beta))
            for cost in FIGURE_COSTS
            for beta in FIGURE_BETAS
        ]
    if name == "one-time-region":
        cost = FIGURE_COSTS[0]
        return [
            ("beta{:g}-cost{}".format(beta, cost.label()), SweepSpec(Strategy.ONE_TIME_GRIM, cost, beta))
            for beta in FIGURE_BETAS
        ]
    if name == "payoff-curves":
        pattern = DefectionPattern(PatternKind.GRIM_PATH)
        return [
            (
                "delta{:g}-cost{}".format(delta, cost.label()),
                CurvePanel(params=GameParams(p=0.0, cost=cost, beta=0.4), delta=delta, pattern=pattern),
            )
            for cost in FIGURE_COSTS
            for delta in FIGURE_DELTAS
        ]
    raise ParameterError("Unknown figure {!r}".format(name))


FIGURE_NAMES = ("cooperation-region", "tft-region", "one-time-region", "payoff-curves")
