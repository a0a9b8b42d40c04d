import numpy as np
import pytest

from ranklash.analysis.errors import ParameterError, StrategyError
from ranklash.analysis.game_core import CostModel
from ranklash.analysis.sweep import (
    FIGURE_BETAS,
    FIGURE_COSTS,
    FIGURE_NAMES,
    Axis,
    CurvePanel,
    SweepSpec,
    boundary_extract,
    figure_panels,
    region_area,
    region_sweep,
)
from ranklash.analysis.thresholds import Strategy

COARSE = Axis(n_points=101)


def sweep(strategy, cost, beta, axis=COARSE):
    return region_sweep(SweepSpec(strategy, cost, beta, axis, axis), threads=2)


def test_axis_values_are_inset():
    values = Axis(0, 1, 4).values()
    assert values.tolist() == pytest.approx([0.125, 0.375, 0.625, 0.875])
    assert Axis(0, 1, 4).edges().tolist() == pytest.approx([0, 0.25, 0.5, 0.75, 1])


def test_axis_validation():
    with pytest.raises(ParameterError):
        Axis(0.5, 0.5, 10)
    with pytest.raises(ParameterError):
        Axis(0, 1, 1)
    with pytest.raises(ParameterError):
        Axis(0, 1.5, 10)


def test_one_time_sweep_needs_fixed_cost():
    with pytest.raises(StrategyError):
        SweepSpec(Strategy.ONE_TIME_GRIM, CostModel(0.1, 1), 0.4)


def test_free_temptation_columns_cooperate():
    grid = sweep("grim", CostModel(0.25), 0.4)
    columns = grid.p_values <= 0.5
    assert grid.cells[columns].all()


def test_columns_are_monotone_in_delta():
    grid = sweep("grim", CostModel(0.1), 0.4)
    assert (np.diff(grid.cells.astype(int), axis=1) >= 0).all()


def test_grim_area_shrinks_with_beta():
    for cost in FIGURE_COSTS:
        areas = [region_area(sweep("grim", cost, beta)) for beta in FIGURE_BETAS]
        assert all(later < earlier for earlier, later in zip(areas, areas[1:]))


def test_grim_area_shrinks_with_cost_exponent():
    areas = [region_area(sweep("grim", cost, 0.4)) for cost in FIGURE_COSTS]
    assert areas[0] > areas[1] > areas[2]


def test_tft_region_ignores_beta():
    low, high = sweep("tft", CostModel(0.1), 0.2), sweep("tft", CostModel(0.1), 0.8)
    assert np.array_equal(low.cells, high.cells)


def test_one_time_region_contracts():
    for beta in FIGURE_BETAS:
        one_time = region_area(sweep("one-time", CostModel(0.1), beta))
        assert one_time < region_area(sweep("grim", CostModel(0.1), beta))


def test_area_is_stable_under_refinement():
    fine = region_area(sweep("grim", CostModel(0.1), 0.4, Axis(n_points=401)))
    coarse = region_area(sweep("grim", CostModel(0.1), 0.4))
    assert 0 < fine < 1
    assert coarse == pytest.approx(fine, abs=0.01)


def test_sweep_is_independent_of_threads():
    spec = SweepSpec("grim", CostModel(0.1, 1), 0.6, COARSE, COARSE)
    assert np.array_equal(region_sweep(spec, threads=1).cells, region_sweep(spec, threads=4).cells)


def test_full_area():
    assert region_area(sweep("grim", CostModel(0.5, 1), 0.4)) == 1.0


def test_tft_boundary():
    points = boundary_extract(sweep("tft", CostModel(0.1), 0.4))
    for point in points:
        assert point.delta_star == pytest.approx(min(max(1 - 0.2 / point.p, 0.0), 1.0))


def test_flat_boundary_when_cost_is_half_the_rate():
    points = boundary_extract(sweep("grim", CostModel(0.5, 1), 0.4))
    assert all(point.delta_star == 0 for point in points)
    assert {point.regime for point in points} == {"AlwaysCooperate"}


def test_grim_boundary_has_interior_maximum():
    points = boundary_extract(sweep("grim", CostModel(0.1), 0.2, Axis(n_points=1000)))
    peak = max(points, key=lambda point: point.delta_star)
    assert peak.p == pytest.approx(0.7385, abs=2e-3)
    assert points[-1].delta_star < peak.delta_star


def test_figure_panels():
    assert len(figure_panels("cooperation-region")) == 12
    assert len(figure_panels("one-time-region")) == 4
    curves = figure_panels("payoff-curves")
    assert len(curves) == 9
    assert all(isinstance(panel, CurvePanel) for _, panel in curves)
    for name in FIGURE_NAMES:
        labels = [label for label, _ in figure_panels(name)]
        assert len(labels) == len(set(labels))


def test_unknown_figure():
    with pytest.raises(ParameterError):
        figure_panels("scatter")
