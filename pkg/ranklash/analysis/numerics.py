import math

from scipy import optimize

from ranklash.analysis.errors import ParameterError

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


def bisect_root(f, lo, hi, xtol=1e-12):
    """Root of f in [lo, hi]; f must change sign across the bracket."""
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ParameterError("No sign change between {!r} and {!r}".format(lo, hi))
    return optimize.bisect(f, lo, hi, xtol=xtol)


def golden_section_max(f, a, b, tol=1e-6):
    """Maximiser of a unimodal f on [a, b] to within tol."""
    c = b - (b - a) / GOLDEN_RATIO
    d = a + (b - a) / GOLDEN_RATIO
    fc, fd = f(c), f(d)

    while abs(b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - (b - a) / GOLDEN_RATIO
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) / GOLDEN_RATIO
            fd = f(d)

    return (a + b) / 2


def grid_then_golden_max(f, lo, hi, points, tol=1e-6):
    """Global maximum on [lo, hi] by a coarse grid refined with golden section.

    Ties on the grid go to the smallest argument; the refined point is kept
    only when it strictly improves on the best grid point.
    """
    if points < 2:
        raise ParameterError("Search grid needs at least 2 points")
    step = (hi - lo) / (points - 1)
    grid = [lo + i * step for i in range(points - 1)] + [hi]
    values = [f(x) for x in grid]
    best = max(range(points), key=lambda i: (values[i], -i))

    left, right = grid[max(best - 1, 0)], grid[min(best + 1, points - 1)]
    refined = golden_section_max(f, left, right, tol)
    refined_value = f(refined)
    if refined_value > values[best]:
        return refined, refined_value
    return grid[best], values[best]
