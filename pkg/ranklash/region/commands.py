import os

import click
import numpy as np
from flask import current_app

from ranklash.analysis.errors import ExportError
from ranklash.analysis.game_core import CostModel
from ranklash.analysis.sweep import (
    FIGURE_NAMES,
    Axis,
    CurvePanel,
    SweepSpec,
    boundary_extract,
    figure_panels,
    region_area,
    region_sweep,
)
from ranklash.curves.commands import curve_payload
from ranklash.export import region_svg
from ranklash.main.errors import handle_domain_errors, validate_form
from ranklash.main.options import config_option, cost_options, output_options, respond
from ranklash.region import bp
from ranklash.region.forms import FigureForm, RegionForm

REGION_COLUMNS = ("p", "delta", "cooperate")
FIGURE_FORMATS = ("svg", "csv", "json")


def _threads():
    return current_app.config["THREADS"] or None


def region_payload(spec):
    """Data, CSV rows and SVG renderer for the cooperation region of one sweep."""
    grid = region_sweep(spec, threads=_threads())
    boundary = boundary_extract(grid)
    rows = [
        dict(p=p, delta=delta, cooperate=grid.cells[i, j])
        for i, p in enumerate(grid.p_values)
        for j, delta in enumerate(grid.delta_values)
    ]
    data = dict(
        p=grid.p_values,
        delta=grid.delta_values,
        delta_star=grid.delta_star_row,
        regime=list(grid.regimes),
        cooperate=grid.cells,
        area=region_area(grid),
        boundary=[dict(p=point.p, delta_star=point.delta_star, regime=point.regime) for point in boundary],
    )
    title = "{} cooperation region, c={}, beta={:g}".format(spec.strategy.value, spec.cost.label(), spec.beta)

    def render():
        return region_svg(grid, boundary, title)

    return data, rows, render


@bp.cli.command("region")
@click.option("--strategy", type=click.Choice(("grim", "tft", "one-time")), default="grim", show_default=True)
@cost_options
@click.option("--points", type=int, help="Points on both axes.  [default: GRID_POINTS]")
@click.option("--p-points", type=int, help="Success rate points (defaults to --points).")
@click.option("--delta-points", type=int, help="Discount factor points (defaults to --points).")
@click.option("--p-lo", type=float, default=0.0, show_default=True)
@click.option("--p-hi", type=float, default=1.0, show_default=True)
@click.option("--delta-lo", type=float, default=0.0, show_default=True)
@click.option("--delta-hi", type=float, default=1.0, show_default=True)
@output_options
@handle_domain_errors
def region(
    strategy,
    cost,
    cost_exponent,
    beta,
    points,
    p_points,
    delta_points,
    p_lo,
    p_hi,
    delta_lo,
    delta_hi,
    fmt,
    output,
):
    """Cells of the (p, delta) plane where restraint is sustainable."""
    points = current_app.config["GRID_POINTS"] if points is None else points
    p_points = points if p_points is None else p_points
    delta_points = points if delta_points is None else delta_points
    form = RegionForm(
        data=dict(
            cost=cost,
            cost_exponent=cost_exponent,
            beta=beta,
            p_points=p_points,
            delta_points=delta_points,
            p_lo=p_lo,
            p_hi=p_hi,
            delta_lo=delta_lo,
            delta_hi=delta_hi,
        )
    )
    validate_form(form)
    spec = SweepSpec(
        strategy=strategy,
        cost=CostModel(cost, cost_exponent),
        beta=beta,
        p_axis=Axis(p_lo, p_hi, p_points),
        delta_axis=Axis(delta_lo, delta_hi, delta_points),
    )
    data, rows, render = region_payload(spec)
    resolved = dict(points=points, p_points=p_points, delta_points=delta_points)
    respond(data, REGION_COLUMNS, rows, fmt, output, render_svg=render, **resolved)


@bp.cli.command("figure")
@click.option("--name", type=click.Choice(FIGURE_NAMES), required=True, help="Panel set to reproduce.")
@click.option("--output-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--format", "fmt", type=click.Choice(FIGURE_FORMATS), default="svg", show_default=True)
@click.option("--points", type=int, help="Region grid points per axis.  [default: GRID_POINTS]")
@config_option
@handle_domain_errors
def figure(name, output_dir, fmt, points):
    """Write every panel of a standard figure, one file per panel."""
    points = current_app.config["GRID_POINTS"] if points is None else points
    validate_form(FigureForm(data=dict(points=points)))
    try:
        os.makedirs(output_dir, exist_ok=True)
    except OSError as error:
        raise ExportError("Cannot create {}: {}".format(output_dir, error.strerror or error))

    curve_grid = np.linspace(0.0, 1.0, current_app.config["CURVE_POINTS"]).tolist()
    for label, panel in figure_panels(name):
        if isinstance(panel, CurvePanel):
            data, rows, render = curve_payload(panel.params, panel.delta, panel.pattern, curve_grid)
            columns = ("p", "v_c", "v_d", "gap")
        else:
            axis = Axis(n_points=points)
            data, rows, render = region_payload(SweepSpec(panel.strategy, panel.cost, panel.beta, axis, axis))
            columns = REGION_COLUMNS

        path = os.path.join(output_dir, "{}-{}.{}".format(name, label, fmt))
        # Panel files are the output, stdout lists them
        respond(data, columns, rows, fmt, path, render_svg=render, points=points, panel=label)
        click.echo(path)
