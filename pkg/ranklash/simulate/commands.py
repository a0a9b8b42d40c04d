import click
from flask import current_app

from ranklash.analysis.simulator import (
    STRATEGY_NAMES,
    SimConfig,
    analytic_pair_value,
    estimate_values,
    make_strategy,
)
from ranklash.main.errors import handle_domain_errors, validate_form
from ranklash.main.options import (
    game_options,
    game_params,
    output_options,
    player_profiles,
    respond,
    second_player_options,
)
from ranklash.simulate import bp
from ranklash.simulate.forms import SimulateForm, SimulateSecondPlayerForm

SIMULATE_COLUMNS = ("player", "mean", "stderr", "analytic", "within_3se", "episodes", "horizon", "seed")


def within_three_se(mean, stderr, analytic, epsilon):
    # Truncating at the horizon moves the mean by at most epsilon
    return abs(mean - analytic) <= 3 * stderr + epsilon


@bp.cli.command("simulate")
@click.option("--s1", type=click.Choice(STRATEGY_NAMES), required=True, help="First player's strategy.")
@click.option("--s2", type=click.Choice(STRATEGY_NAMES), required=True, help="Second player's strategy.")
@click.option("--k1", type=int, default=1, show_default=True, help="Attack rounds for a defect-k first player.")
@click.option("--k2", type=int, default=1, show_default=True, help="Attack rounds for a defect-k second player.")
@game_options
@click.option("--delta", type=float, required=True, help="Discount factor.")
@click.option("--episodes", type=int, help="Monte Carlo episodes.  [default: EPISODES]")
@click.option("--seed", type=int, help="Master seed.  [default: DEFAULT_SEED]")
@click.option("--epsilon", type=float, help="Tail weight left after the horizon.  [default: HORIZON_EPSILON]")
@second_player_options
@output_options
@handle_domain_errors
def simulate(
    s1,
    s2,
    k1,
    k2,
    p,
    cost,
    cost_exponent,
    beta,
    one_time,
    delta,
    episodes,
    seed,
    epsilon,
    p2,
    cost2,
    cost2_exponent,
    fmt,
    output,
):
    """Monte Carlo discounted payoffs of a strategy pair, checked against the exact value."""
    config = current_app.config
    episodes = config["EPISODES"] if episodes is None else episodes
    seed = config["DEFAULT_SEED"] if seed is None else seed
    epsilon = config["HORIZON_EPSILON"] if epsilon is None else epsilon
    values = dict(
        p=p,
        cost=cost,
        cost_exponent=cost_exponent,
        beta=beta,
        delta=delta,
        episodes=episodes,
        seed=seed,
        epsilon=epsilon,
        k1=k1,
        k2=k2,
    )

    profiles = None
    if p2 is None:
        validate_form(SimulateForm(data=values))
    else:
        cost2 = cost if cost2 is None else cost2
        cost2_exponent = cost_exponent if cost2_exponent is None else cost2_exponent
        validate_form(SimulateSecondPlayerForm(data=dict(values, p2=p2, cost2=cost2, cost2_exponent=cost2_exponent)))
        profiles = player_profiles(p, cost, cost_exponent, p2, cost2, cost2_exponent)

    params = game_params(p, cost, cost_exponent, beta, one_time)
    first, second = make_strategy(s1, k1), make_strategy(s2, k2)
    sim = SimConfig(
        params=params,
        delta=delta,
        episodes=episodes,
        horizon_epsilon=epsilon,
        master_seed=seed,
        profiles=profiles,
    )
    report = estimate_values(first, second, sim, threads=config["THREADS"] or None)
    analytic = analytic_pair_value(first, second, params, delta, profiles)
    within = [within_three_se(*item, epsilon) for item in zip(report.mean, report.stderr, analytic)]

    data = dict(
        mean=list(report.mean),
        stderr=list(report.stderr),
        analytic=list(analytic),
        within_3se=within,
        episodes=report.episodes,
        horizon=report.horizon,
        seed=report.seed,
    )
    rows = [
        dict(
            player=index + 1,
            mean=report.mean[index],
            stderr=report.stderr[index],
            analytic=analytic[index],
            within_3se=within[index],
            episodes=report.episodes,
            horizon=report.horizon,
            seed=report.seed,
        )
        for index in range(2)
    ]
    respond(data, SIMULATE_COLUMNS, rows, fmt, output, seed=seed, episodes=episodes, epsilon=epsilon)
