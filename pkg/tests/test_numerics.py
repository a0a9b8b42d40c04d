import math

import pytest

from ranklash.analysis.errors import ParameterError
from ranklash.analysis.numerics import bisect_root, golden_section_max, grid_then_golden_max


def test_bisect_root():
    assert bisect_root(lambda x: x * x - 2, 0, 2) == pytest.approx(math.sqrt(2), abs=1e-10)


def test_bisect_root_needs_sign_change():
    with pytest.raises(ParameterError):
        bisect_root(lambda x: x * x + 1, -1, 1)


def test_golden_section_max():
    assert golden_section_max(lambda x: -((x - 0.3) ** 2), 0, 1, 1e-8) == pytest.approx(0.3, abs=1e-6)


def test_grid_then_golden_prefers_smallest_tie():
    x, value = grid_then_golden_max(lambda x: 1.0, 0, 1, 11)
    assert x == 0
    assert value == 1.0


def test_grid_then_golden_keeps_endpoint():
    x, _ = grid_then_golden_max(lambda x: x, 0, 1, 101)
    assert x == 1


def test_golden_section_max_evaluates_once_per_step():
    calls = []

    def f(x):
        calls.append(x)
        return -abs(x - 0.7)

    assert golden_section_max(f, 0, 1, 1e-8) == pytest.approx(0.7, abs=1e-6)
    steps = math.ceil(math.log(1e-8) / math.log(2 / (1 + math.sqrt(5))))
    assert len(calls) <= steps + 3
