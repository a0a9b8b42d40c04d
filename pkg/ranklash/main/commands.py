import click

from ranklash.analysis.game_core import check_pd_ordering, stage_payoffs, stage_payoffs_asymmetric
from ranklash.main import bp
from ranklash.main.errors import handle_domain_errors, validate_form
from ranklash.main.forms import GameForm, SecondPlayerForm
from ranklash.main.options import (
    game_options,
    game_params,
    output_options,
    payoff_row,
    player_profiles,
    respond,
    second_player_options,
)

PAYOFF_COLUMNS = ("player", "R", "T", "S", "Q")


@bp.cli.command("payoffs")
@game_options
@second_player_options
@output_options
@handle_domain_errors
def payoffs(p, cost, cost_exponent, beta, one_time, p2, cost2, cost2_exponent, fmt, output):
    """Expected stage payoffs R, T, S and Q."""
    if p2 is None:
        validate_form(GameForm(data=dict(p=p, cost=cost, cost_exponent=cost_exponent, beta=beta)))
        matrix = stage_payoffs(game_params(p, cost, cost_exponent, beta, one_time))
        respond(matrix.as_dict(), PAYOFF_COLUMNS, [payoff_row(1, matrix)], fmt, output)
        return

    cost2 = cost if cost2 is None else cost2
    cost2_exponent = cost_exponent if cost2_exponent is None else cost2_exponent
    form = SecondPlayerForm(
        data=dict(
            p=p,
            cost=cost,
            cost_exponent=cost_exponent,
            beta=beta,
            p2=p2,
            cost2=cost2,
            cost2_exponent=cost2_exponent,
        )
    )
    validate_form(form)
    first, second = player_profiles(p, cost, cost_exponent, p2, cost2, cost2_exponent)
    matrices = stage_payoffs_asymmetric(first, second, beta)
    respond(
        {"player1": matrices[0].as_dict(), "player2": matrices[1].as_dict()},
        PAYOFF_COLUMNS,
        [payoff_row(1, matrices[0]), payoff_row(2, matrices[1])],
        fmt,
        output,
    )


@bp.cli.command("ordering")
@game_options
@output_options
@handle_domain_errors
def ordering(p, cost, cost_exponent, beta, one_time, fmt, output):
    """Check the prisoner's dilemma ordering T > R > Q > S."""
    validate_form(GameForm(data=dict(p=p, cost=cost, cost_exponent=cost_exponent, beta=beta)))
    params = game_params(p, cost, cost_exponent, beta, one_time)
    matrix = stage_payoffs(params)
    report = check_pd_ordering(matrix, params)
    if not report.holds:
        click.echo("Ordering violated: {}".format(", ".join(report.violated_pairs)), err=True)

    data = dict(
        holds=report.holds,
        violated_pairs=list(report.violated_pairs),
        analytic_bound=report.analytic_bound,
        below_bound=report.below_bound,
        temptation_positive=report.temptation_positive,
        **matrix.as_dict(),
    )
    row = dict(data, violated_pairs=" ".join(report.violated_pairs))
    respond(data, tuple(row), [row], fmt, output)
