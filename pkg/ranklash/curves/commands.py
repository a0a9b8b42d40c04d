import click
import numpy as np
from flask import current_app

from ranklash.analysis.value_funcs import (
    PEAK_GRID_POINTS,
    DefectionPattern,
    PatternKind,
    defection_curve,
    futile_defense,
    unstable_intervals,
)
from ranklash.curves import bp
from ranklash.curves.forms import CurvesForm, FutileForm
from ranklash.export import curves_svg
from ranklash.main.errors import handle_domain_errors, validate_form
from ranklash.main.options import cost_options, game_params, output_options, respond

CURVE_COLUMNS = ("p", "v_c", "v_d", "gap")
PATTERNS = tuple(kind.value for kind in PatternKind)


def _parse_rates(ctx, param, value):
    if value is None:
        return None
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter("expected comma-separated numbers")


def pattern_options(f):
    f = click.option("--k", type=int, default=1, show_default=True, help="Defection rounds for the tft-k pattern.")(f)
    f = click.option("--pattern", type=click.Choice(PATTERNS), default="grim", show_default=True)(f)
    f = click.option("--delta", type=float, required=True, help="Discount factor.")(f)
    return f


def curve_title(template, delta, pattern):
    return "{} path, delta={:g}, c={}, beta={:g}".format(
        pattern.kind.value, delta, template.cost.label(), template.beta
    )


def curve_payload(template, delta, pattern, grid, futile_interval=None):
    """Data, CSV rows and SVG renderer for V_C and V_D over a success-rate grid."""
    samples = defection_curve(template, delta, grid, pattern)
    rows = [dict(p=s.p, v_c=s.v_c, v_d=s.v_d, gap=s.gap) for s in samples]

    def render():
        return curves_svg(samples, curve_title(template, delta, pattern), futile_interval)

    return dict(samples=rows), rows, render


@bp.cli.command("curves")
@pattern_options
@cost_options
@click.option("--points", type=int, help="Evenly spaced success rates.  [default: CURVE_POINTS]")
@click.option("--p-lo", type=float, default=0.0, show_default=True)
@click.option("--p-hi", type=float, default=1.0, show_default=True)
@click.option("--p-values", callback=_parse_rates, help="Comma-separated success rates, replacing the even grid.")
@output_options
@handle_domain_errors
def curves(delta, pattern, k, cost, cost_exponent, beta, points, p_lo, p_hi, p_values, fmt, output):
    """Discounted value of restraint and of deviating across attack success rates."""
    if points is None:
        points = current_app.config["CURVE_POINTS"]
    form = CurvesForm(
        data=dict(
            delta=delta,
            k=k,
            cost=cost,
            cost_exponent=cost_exponent,
            beta=beta,
            points=points,
            p_lo=p_lo,
            p_hi=p_hi,
        )
    )
    validate_form(form)
    grid = p_values if p_values is not None else np.linspace(p_lo, p_hi, points).tolist()
    template = game_params(0.0, cost, cost_exponent, beta)
    data, rows, render = curve_payload(template, delta, DefectionPattern.of(pattern, k), grid)
    resolved = dict(points=points)
    if p_values is not None:
        resolved["p_values"] = ",".join(repr(value) for value in p_values)
    respond(data, CURVE_COLUMNS, rows, fmt, output, render_svg=render, **resolved)


def _interval_text(intervals):
    return " ".join("{:.12g}:{:.12g}".format(lo, hi) for lo, hi in intervals)


@bp.cli.command("futile")
@pattern_options
@cost_options
@click.option("--points", type=int, default=PEAK_GRID_POINTS, show_default=True, help="Peak search grid.")
@output_options
@handle_domain_errors
def futile(delta, pattern, k, cost, cost_exponent, beta, points, fmt, output):
    """Peak of the deviation value over p and the range of caps that cannot lower it."""
    form = FutileForm(
        data=dict(delta=delta, k=k, cost=cost, cost_exponent=cost_exponent, beta=beta, points=points)
    )
    validate_form(form)
    template = game_params(0.0, cost, cost_exponent, beta)
    kind = DefectionPattern.of(pattern, k)
    report = futile_defense(template, delta, kind, points)
    instability = unstable_intervals(template, delta, kind, points)

    data = dict(
        p_peak=report.p_peak,
        v_d_max=report.v_d_max,
        exists=report.exists,
        futile_interval=list(report.futile_interval) if report.exists else None,
        unstable_intervals=[list(interval) for interval in instability.intervals],
        near_zero=instability.near_zero,
    )
    row = dict(
        p_peak=report.p_peak,
        v_d_max=report.v_d_max,
        exists=report.exists,
        futile_lo=report.futile_interval[0] if report.exists else None,
        futile_hi=report.futile_interval[1] if report.exists else None,
        near_zero=instability.near_zero,
        unstable_intervals=_interval_text(instability.intervals),
    )
    grid = np.linspace(0.0, 1.0, current_app.config["CURVE_POINTS"]).tolist()
    _, _, render = curve_payload(template, delta, kind, grid, report.futile_interval)
    respond(data, tuple(row), [row], fmt, output, render_svg=render)
