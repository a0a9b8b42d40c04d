import click

from ranklash.analysis.game_core import CostModel
from ranklash.analysis.thresholds import (
    ProbeVariable,
    Regime,
    Strategy,
    cost_threshold_grim,
    cost_threshold_tft,
    delta_star_report,
    discount_asymmetry,
    monotonicity_probe,
    tft_behavior,
    tft_k_classify,
    thresholds_asymmetric,
)
from ranklash.analysis.value_funcs import DefectionPattern, PatternKind, indifference_discount
from ranklash.main.errors import handle_domain_errors, validate_form
from ranklash.main.forms import GameForm
from ranklash.main.options import (
    cost_options,
    game_options,
    game_params,
    output_options,
    player_profiles,
    respond,
    second_player_options,
)
from ranklash.threshold import bp
from ranklash.threshold.forms import (
    AsymmetricForm,
    CostThresholdForm,
    DiscountAsymmetryForm,
    DiscountedGameForm,
    ProbeForm,
)

THRESHOLD_STRATEGIES = ("grim", "tft", "tft-k", "one-time", "asym")
VERIFY_PATTERNS = {
    Strategy.GRIM: PatternKind.GRIM_PATH,
    Strategy.TIT_FOR_TAT: PatternKind.TFT_SINGLE,
    Strategy.ONE_TIME_GRIM: PatternKind.ONE_TIME_GRIM_PATH,
}


def _require(value, flag, strategy):
    if value is None:
        raise click.UsageError("{} is required with --strategy {}".format(flag, strategy))


def _closed_form(params, strategy, verify):
    report = delta_star_report(params, strategy)
    data = dict(delta_star=report.delta_star, regime=report.regime.value)
    if strategy is Strategy.TIT_FOR_TAT:
        data["beta_independent"] = True
    data.update(report.details)
    if verify:
        root = None
        # Outside the interior regime V_C - V_D has no sign change on (0, 1)
        if report.regime is Regime.INTERIOR:
            root = indifference_discount(params, DefectionPattern(VERIFY_PATTERNS[strategy]))
        data["bisection_root"] = root
    return data


def _asymmetric(p, cost, cost_exponent, beta, p2, cost2, cost2_exponent, delta, delta2, asym_strategy):
    _require(p2, "--p2", "asym")
    _require(delta, "--delta", "asym")
    delta2 = delta if delta2 is None else delta2
    cost2 = cost if cost2 is None else cost2
    cost2_exponent = cost_exponent if cost2_exponent is None else cost2_exponent
    form = AsymmetricForm(
        data=dict(
            p=p,
            cost=cost,
            cost_exponent=cost_exponent,
            beta=beta,
            p2=p2,
            cost2=cost2,
            cost2_exponent=cost2_exponent,
            delta=delta,
            delta2=delta2,
        )
    )
    validate_form(form)
    profiles = player_profiles(p, cost, cost_exponent, p2, cost2, cost2_exponent, delta, delta2)
    result = thresholds_asymmetric(*profiles, beta, asym_strategy)
    players = [
        dict(player=index, delta=profile.delta, delta_star=report.delta_star, regime=report.regime.value)
        for index, (profile, report) in enumerate(zip(profiles, result.reports), start=1)
    ]
    data = dict(players=players, binding_player=result.binding_player, sustainable=result.sustainable)
    rows = [dict(row, binding_player=result.binding_player, sustainable=result.sustainable) for row in players]
    return data, rows


@bp.cli.command("threshold")
@click.option("--strategy", type=click.Choice(THRESHOLD_STRATEGIES), default="grim", show_default=True)
@game_options
@click.option("--delta", type=float, help="Discount factor (tft-k and asym).")
@click.option("--delta2", type=float, help="Second player's discount factor (asym, defaults to --delta).")
@click.option("--asym-strategy", type=click.Choice(("grim", "tft")), default="grim", show_default=True)
@click.option("--verify", is_flag=True, help="Also solve V_C = V_D by bisection.")
@second_player_options
@output_options
@handle_domain_errors
def threshold(
    strategy,
    p,
    cost,
    cost_exponent,
    beta,
    one_time,
    delta,
    delta2,
    asym_strategy,
    verify,
    p2,
    cost2,
    cost2_exponent,
    fmt,
    output,
):
    """Critical discount factor for sustaining mutual restraint."""
    if strategy == "asym":
        data, rows = _asymmetric(p, cost, cost_exponent, beta, p2, cost2, cost2_exponent, delta, delta2, asym_strategy)
        respond(data, tuple(rows[0]), rows, fmt, output)
        return

    if strategy == "tft-k":
        _require(delta, "--delta", strategy)
        validate_form(
            DiscountedGameForm(data=dict(p=p, cost=cost, cost_exponent=cost_exponent, beta=beta, delta=delta))
        )
        params = game_params(p, cost, cost_exponent, beta, one_time)
        classification = tft_k_classify(params, delta)
        data = dict(
            threshold=classification.threshold,
            optimal_k=classification.optimal_k.value,
            behavior=tft_behavior(params, delta).value,
        )
        respond(data, tuple(data), [data], fmt, output)
        return

    validate_form(GameForm(data=dict(p=p, cost=cost, cost_exponent=cost_exponent, beta=beta)))
    strategy = Strategy(strategy)
    one_time = one_time or strategy is Strategy.ONE_TIME_GRIM
    data = _closed_form(game_params(p, cost, cost_exponent, beta, one_time), strategy, verify)
    respond(data, tuple(data), [data], fmt, output)


@bp.cli.command("cost-threshold")
@click.option("--strategy", type=click.Choice(("grim", "tft")), default="grim", show_default=True)
@click.option("--p", type=float, required=True, help="Attack success rate.")
@click.option("--delta", type=float, required=True, help="Discount factor.")
@click.option("--delta2", type=float, help="Second player's discount factor.")
@cost_options
@output_options
@handle_domain_errors
def cost_threshold(strategy, p, delta, delta2, cost, cost_exponent, beta, fmt, output):
    """Smallest attack cost that sustains restraint, per player when discount factors differ."""
    values = dict(p=p, delta=delta, cost=cost, cost_exponent=cost_exponent, beta=beta)
    if delta2 is None:
        validate_form(CostThresholdForm(data=values))
        if strategy == "grim":
            result = cost_threshold_grim(p, beta, delta)
        else:
            result = cost_threshold_tft(p, delta)
        data = dict(min_cost=result.min_cost, raw_value=result.raw_value, clamped=result.clamped)
        respond(data, tuple(data), [data], fmt, output)
        return

    validate_form(DiscountAsymmetryForm(data=dict(values, delta2=delta2)))
    result = discount_asymmetry(p, CostModel(cost, cost_exponent), beta, delta, delta2, strategy)
    players = [
        dict(player=index, delta=value, min_cost=item.min_cost, raw_value=item.raw_value, clamped=item.clamped)
        for index, (value, item) in enumerate(zip((delta, delta2), result.thresholds), start=1)
    ]
    data = dict(players=players, sustainable=result.sustainable, binding_player=result.binding_player)
    rows = [dict(row, sustainable=result.sustainable, binding_player=result.binding_player) for row in players]
    respond(data, tuple(rows[0]), rows, fmt, output)


@bp.cli.command("probe")
@click.option("--variable", type=click.Choice([item.value for item in ProbeVariable]), required=True)
@click.option("--step", type=float, default=1e-5, show_default=True, help="Central difference step.")
@game_options
@output_options
@handle_domain_errors
def probe(variable, step, p, cost, cost_exponent, beta, one_time, fmt, output):
    """Sign of the grim threshold's derivative in cost, degradation factor or success rate."""
    validate_form(ProbeForm(data=dict(p=p, cost=cost, cost_exponent=cost_exponent, beta=beta, step=step)))
    params = game_params(p, cost, cost_exponent, beta, one_time)
    result = monotonicity_probe(params, variable, step)
    data = dict(variable=variable, sign=result.sign, derivative=result.derivative)
    respond(data, tuple(data), [data], fmt, output)
