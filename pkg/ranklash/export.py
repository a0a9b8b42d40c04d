"""Serialise command results as CSV, JSON or SVG."""

import csv
import io
import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass

import click
import matplotlib
import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure

from ranklash.analysis.errors import ExportError

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "svg")
SIGNIFICANT_DIGITS = 12
TICKS = np.linspace(0.0, 1.0, 11)
REGION_COLOURS = ListedColormap(["#f7f7f7", "#4c72b0"])


@dataclass
class Result:
    command: str
    meta: dict
    data: object
    columns: tuple
    rows: list
    render_svg: object = None


def _number(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return None
        return float("{:.{}g}".format(value, SIGNIFICANT_DIGITS))
    return value


def clean(value):
    """Plain JSON-ready structure with floats cut to 12 significant digits."""
    if isinstance(value, dict):
        return {key: clean(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(item) for item in value]
    if isinstance(value, np.ndarray):
        return clean(value.tolist())
    return _number(value)


def _cell(value):
    value = _number(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "{:.{}g}".format(value, SIGNIFICANT_DIGITS)
    return str(value)


def to_csv(result):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_cell(row[column]) for column in result.columns])
    return buffer.getvalue()


def to_json(result):
    return json.dumps({"meta": clean(result.meta), "data": clean(result.data)}, indent=2) + "\n"


def _render(figure):
    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "ranklash"}):
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def _axes(title, xlabel, ylabel):
    figure = Figure(figsize=(6, 5))
    axes = figure.subplots()
    axes.set_title(title)
    axes.set_xlabel(xlabel)
    axes.set_ylabel(ylabel)
    axes.set_xticks(TICKS)
    return figure, axes


def region_svg(grid, boundary, title):
    figure, axes = _axes(title, "attack success rate p", "discount factor delta")
    axes.pcolormesh(
        grid.spec.p_axis.edges(),
        grid.spec.delta_axis.edges(),
        grid.cells.T.astype(float),
        cmap=REGION_COLOURS,
        vmin=0,
        vmax=1,
        shading="flat",
    )
    axes.plot([point.p for point in boundary], [point.delta_star for point in boundary], color="black", linewidth=1)
    axes.set_yticks(TICKS)
    axes.set_xlim(0, 1)
    axes.set_ylim(0, 1)
    return _render(figure)


def curves_svg(samples, title, futile_interval=None):
    figure, axes = _axes(title, "attack success rate p", "discounted value")
    p = [sample.p for sample in samples]
    axes.plot(p, [sample.v_c for sample in samples], label="V_C")
    axes.plot(p, [sample.v_d for sample in samples], label="V_D")
    if futile_interval:
        axes.axvspan(*futile_interval, color="#dd8452", alpha=0.2, label="futile caps")
    axes.legend()
    return _render(figure)


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    try:
        handle, temporary = tempfile.mkstemp(dir=directory, prefix=".ranklash-", suffix=".tmp")
    except OSError as error:
        raise ExportError("Cannot write {}: {}".format(path, error.strerror or error))
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        os.replace(temporary, path)
    except OSError as error:
        os.unlink(temporary)
        raise ExportError("Cannot write {}: {}".format(path, error.strerror or error))


def render(result, fmt):
    if fmt == "csv":
        return to_csv(result)
    if fmt == "json":
        return to_json(result)
    if fmt == "svg":
        if result.render_svg is None:
            raise click.UsageError("SVG output is only available for region and curve results")
        return result.render_svg()
    raise click.UsageError("Unknown format {!r}".format(fmt))


def export(result, fmt, path=None):
    """Write the result to path atomically, or to stdout when path is None or '-'."""
    text = render(result, fmt)
    if path in (None, "-"):
        click.echo(text, nl=False)
        return
    write_atomic(path, text)
    logger.info("Wrote %s %s to %s", result.command, fmt, path)
