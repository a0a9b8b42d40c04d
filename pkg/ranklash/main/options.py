"""Click options shared by every command, and the result hand-off to export."""

import click
from dotenv import dotenv_values

from ranklash import __version__
from ranklash.analysis.game_core import CostModel, CostTiming, GameParams, PlayerProfile
from ranklash.export import FORMATS, Result, export

OUTPUT_PARAMS = ("fmt", "output")


def _option_names(command):
    """Long flag name, with hyphens or underscores, to parameter name."""
    names = {}
    for item in command.params:
        if not isinstance(item, click.Option) or not item.expose_value:
            continue
        for opt in item.opts + item.secondary_opts:
            if opt.startswith("--"):
                names[opt[2:]] = item.name
                names[opt[2:].replace("-", "_")] = item.name
    return names


def _load_config_file(ctx, param, value):
    if value is None:
        return value
    names = _option_names(ctx.command)
    defaults = dict(ctx.default_map or {})
    for key, item in dotenv_values(value).items():
        if item is None:
            continue
        flag = key.strip().lstrip("-")
        if flag not in names:
            raise click.UsageError("Unknown key {!r} in config file {}".format(flag, value), ctx=ctx)
        defaults[names[flag]] = item
    ctx.default_map = defaults
    return value


def _stack(f, decorators):
    for decorator in reversed(decorators):
        f = decorator(f)
    return f


def config_option(f):
    return click.option(
        "--config",
        "config_file",
        type=click.Path(exists=True, dir_okay=False),
        is_eager=True,
        expose_value=False,
        callback=_load_config_file,
        help="Flat key=value file of long flag names; explicit flags win.",
    )(f)


def cost_options(f):
    return _stack(
        f,
        [
            click.option("--cost", type=float, default=0.0, show_default=True, help="Cost coefficient a in c = a*p^k."),
            click.option("--cost-exponent", type=float, default=0.0, show_default=True, help="Cost exponent k."),
            click.option("--beta", type=float, default=0.4, show_default=True, help="Degradation factor."),
        ],
    )


def game_options(f):
    return _stack(
        f,
        [
            click.option("--p", type=float, required=True, help="Attack success rate."),
            cost_options,
            click.option("--one-time", is_flag=True, help="Charge the cost on a player's first attack only."),
        ],
    )


def second_player_options(f):
    return _stack(
        f,
        [
            click.option("--p2", type=float, help="Second player's attack success rate."),
            click.option("--cost2", type=float, help="Second player's cost coefficient (defaults to --cost)."),
            click.option("--cost2-exponent", type=float, help="Second player's cost exponent."),
        ],
    )


def output_options(f):
    return _stack(
        f,
        [
            click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True),
            click.option("--output", default="-", show_default=True, help="Output file, '-' for stdout."),
            config_option,
        ],
    )


def game_params(p, cost, cost_exponent, beta, one_time=False):
    timing = CostTiming.ONE_TIME_FIXED if one_time else CostTiming.RECURRING
    return GameParams(p=p, cost=CostModel(cost, cost_exponent), beta=beta, cost_timing=timing)


def player_profiles(p, cost, cost_exponent, p2, cost2, cost2_exponent, delta=0.0, delta2=None):
    first = PlayerProfile(p=p, cost=CostModel(cost, cost_exponent), delta=delta)
    second = PlayerProfile(
        p=p2,
        cost=CostModel(cost if cost2 is None else cost2, cost_exponent if cost2_exponent is None else cost2_exponent),
        delta=delta if delta2 is None else delta2,
    )
    return first, second


def command_meta(seed=None, **resolved):
    """Inputs of the running command, enough to run it again."""
    ctx = click.get_current_context()
    args = {name: value for name, value in ctx.params.items() if name not in OUTPUT_PARAMS}
    args.update(resolved)
    if seed is not None and "seed" in args:
        args["seed"] = seed
    return {
        "command": ctx.info_name,
        "args": {name.replace("_", "-"): value for name, value in args.items()},
        "version": __version__,
        "seed": seed,
    }


def respond(data, columns, rows, fmt, output, seed=None, render_svg=None, **resolved):
    result = Result(
        command=click.get_current_context().info_name,
        meta=command_meta(seed, **resolved),
        data=data,
        columns=tuple(columns),
        rows=list(rows),
        render_svg=render_svg,
    )
    export(result, fmt, output)
    return result


def payoff_row(label, matrix):
    return dict(player=label, **matrix.as_dict())
