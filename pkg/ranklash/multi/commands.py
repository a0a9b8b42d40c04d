import click

from ranklash.analysis.game_core import CostModel
from ranklash.analysis.multiplayer import (
    MultiParams,
    MultiStrategy,
    PayoffMode,
    mode_discrepancy,
    multi_delta_star,
    multi_trend,
)
from ranklash.main.errors import handle_domain_errors, validate_form
from ranklash.main.options import output_options, respond
from ranklash.multi import bp
from ranklash.multi.forms import MultiForm, TrendForm

TREND_COLUMNS = ("m", "delta_star", "approximation")


def multi_options(f):
    f = click.option(
        "--strategy", type=click.Choice([item.value for item in MultiStrategy]), default="grim", show_default=True
    )(f)
    f = click.option(
        "--mode", type=click.Choice([item.value for item in PayoffMode]), default="as-written", show_default=True
    )(f)
    f = click.option("--beta", type=float, default=0.4, show_default=True, help="Degradation factor.")(f)
    f = click.option("--cost-exponent", type=float, default=0.0, show_default=True, help="Cost exponent k.")(f)
    f = click.option("--cost", type=float, default=0.0, show_default=True, help="Cost coefficient a in c = a*p^k.")(f)
    f = click.option("--p", type=float, required=True, help="Attack success rate.")(f)
    f = click.option("--n", type=int, required=True, help="Number of players.")(f)
    return f


@bp.cli.command("multi")
@multi_options
@click.option("--m", type=int, required=True, help="Number of attackers.")
@output_options
@handle_domain_errors
def multi(n, p, cost, cost_exponent, beta, mode, strategy, m, fmt, output):
    """Stage payoffs and critical discount factor when M of N providers attack."""
    form = MultiForm(data=dict(n=n, m=m, p=p, cost=cost, cost_exponent=cost_exponent, beta=beta))
    validate_form(form)
    mp = MultiParams(n=n, m=m, p=p, cost=CostModel(cost, cost_exponent), beta=beta, mode=PayoffMode(mode))
    report = multi_delta_star(mp, strategy)
    discrepancy = mode_discrepancy(mp)

    data = dict(
        delta_star=report.delta_star,
        regime=report.regime.value,
        payoffs=report.details["payoffs"],
        temptation_difference=discrepancy.temptation_difference,
        mutual_difference=discrepancy.mutual_difference,
        modes_disagree=discrepancy.disagree,
    )
    row = dict(
        delta_star=report.delta_star,
        regime=report.regime.value,
        **report.details["payoffs"],
        temptation_difference=discrepancy.temptation_difference,
        mutual_difference=discrepancy.mutual_difference,
        modes_disagree=discrepancy.disagree,
    )
    respond(data, tuple(row), [row], fmt, output)


@bp.cli.command("multi-trend")
@multi_options
@output_options
@handle_domain_errors
def trend(n, p, cost, cost_exponent, beta, mode, strategy, fmt, output):
    """Critical discount factor for every coalition size M from 1 to N - 1."""
    validate_form(TrendForm(data=dict(n=n, p=p, cost=cost, cost_exponent=cost_exponent, beta=beta)))
    result = multi_trend(n, p, CostModel(cost, cost_exponent), beta, strategy, mode)
    rows = [dict(m=point.m, delta_star=point.delta_star, approximation=point.approximation) for point in result.points]
    data = dict(
        points=rows,
        tail_start=result.tail_start,
        tail_monotone_decreasing=result.tail_monotone_decreasing,
        premise_holds=result.premise_holds,
    )
    if not result.premise_holds:
        click.echo("Mutual attack pays at least 1/N; the large-M approximation does not apply", err=True)
    respond(data, TREND_COLUMNS, rows, fmt, output)
