"""Repeated-contest simulator.

Strategies see only the actions their opponent chose, never whether an
attack landed, so the joint action path of a pair is fixed in advance and
only the success draws vary between episodes. Episodes are simulated in
fixed-size blocks; each block owns a counter-based random stream derived
from the master seed and its index, which keeps results identical for any
number of worker threads.
"""

import enum
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from ranklash.analysis.errors import ParameterError
from ranklash.analysis.game_core import CostTiming, PayoffMatrix, check_discount, check_unit
from ranklash.analysis.multiplayer import PayoffMode

logger = logging.getLogger(__name__)

BLOCK_SIZE = 4096
MAX_PATH_ROUNDS = 10000


class Action(enum.Enum):
    COOPERATE = "C"
    ATTACK = "A"


COOPERATE = Action.COOPERATE
ATTACK = Action.ATTACK


class StrategyAutomaton:
    """Deterministic strategy reacting to the opponent's previous actions."""

    name = None

    def reset(self):
        pass

    def next_action(self):
        raise NotImplementedError

    def observe(self, opponent_action):
        pass

    def state(self):
        return None


class AllCooperate(StrategyAutomaton):
    name = "all-cooperate"

    def next_action(self):
        return COOPERATE


class AllDefect(StrategyAutomaton):
    name = "all-defect"

    def next_action(self):
        return ATTACK


class GrimTrigger(StrategyAutomaton):
    """Restrained until the opponent attacks once, then attacks forever."""

    name = "grim"

    def __init__(self):
        self.triggered = False

    def reset(self):
        self.triggered = False

    def next_action(self):
        return ATTACK if self.triggered else COOPERATE

    def observe(self, opponent_action):
        if opponent_action is ATTACK:
            self.triggered = True

    def state(self):
        return self.triggered


class TitForTat(StrategyAutomaton):
    name = "tft"

    def __init__(self, initial_move=COOPERATE):
        self.initial_move = initial_move
        self.last_seen = initial_move

    def reset(self):
        self.last_seen = self.initial_move

    def next_action(self):
        return self.last_seen

    def observe(self, opponent_action):
        self.last_seen = opponent_action

    def state(self):
        return self.last_seen


class DefectKThenCooperate(StrategyAutomaton):
    name = "defect-k"

    def __init__(self, k=1):
        if k < 1:
            raise ParameterError("Defection rounds k must be 1 or more")
        self.k = k
        self.played = 0

    def reset(self):
        self.played = 0

    def next_action(self):
        return ATTACK if self.played < self.k else COOPERATE

    def observe(self, opponent_action):
        self.played = min(self.played + 1, self.k)

    def state(self):
        return self.played


STRATEGY_NAMES = ("all-cooperate", "all-defect", "grim", "tft", "tft-open-d", "defect-k")


def make_strategy(name, k=1):
    if name == "all-cooperate":
        return AllCooperate()
    if name == "all-defect":
        return AllDefect()
    if name == "grim":
        return GrimTrigger()
    if name == "tft":
        return TitForTat(COOPERATE)
    if name == "tft-open-d":
        return TitForTat(ATTACK)
    if name == "defect-k":
        return DefectKThenCooperate(k)
    raise ParameterError("Unknown strategy {!r}".format(name))


@dataclass(frozen=True)
class Contest:
    """Per-player success rates and evaluated costs, plus the shared degradation factor."""

    rates: tuple
    costs: tuple
    beta: float
    timing: CostTiming = CostTiming.RECURRING

    @classmethod
    def of(cls, params, profiles=None):
        if profiles is None:
            return cls((params.p, params.p), (params.c, params.c), params.beta, params.cost_timing)
        return cls(
            tuple(profile.p for profile in profiles),
            tuple(profile.c for profile in profiles),
            params.beta,
            params.cost_timing,
        )


@dataclass(frozen=True)
class StageOutcome:
    actions: tuple
    successes: tuple
    payoffs: tuple


@dataclass(frozen=True)
class SimConfig:
    params: object
    delta: float
    episodes: int = 100000
    horizon_epsilon: float = 1e-9
    master_seed: int = 0
    profiles: tuple = None

    def __post_init__(self):
        check_discount(self.delta)
        if self.episodes < 1:
            raise ParameterError("Episodes must be 1 or more")
        if not 0 < self.horizon_epsilon < 1:
            raise ParameterError("Horizon tolerance must be between 0 and 1")
        if self.master_seed < 0:
            raise ParameterError("Seed must be 0 or more")

    @property
    def contest(self):
        return Contest.of(self.params, self.profiles)

    @property
    def horizon(self):
        if self.delta == 0:
            return 1
        c_max = max(self.contest.costs)
        return max(1, math.ceil(math.log(self.horizon_epsilon / (1 + c_max)) / math.log(self.delta)))


@dataclass(frozen=True)
class SimReport:
    mean: tuple
    stderr: tuple
    episodes: int
    horizon: int
    seed: int


@dataclass(frozen=True)
class StageSample:
    means: tuple
    stderr: tuple


def _shares(actions, s1, s2, beta):
    a1, a2 = actions
    if a1 is ATTACK and a2 is ATTACK:
        share1 = np.where(s1 & s2, beta / 2, np.where(s1, 1.0, np.where(s2, 0.0, 0.5)))
        share2 = np.where(s1 & s2, beta / 2, np.where(s2, 1.0, np.where(s1, 0.0, 0.5)))
    elif a1 is ATTACK:
        share1 = np.where(s1, 1.0, 0.5)
        share2 = 1.0 - share1
    elif a2 is ATTACK:
        share2 = np.where(s2, 1.0, 0.5)
        share1 = 1.0 - share2
    else:
        share1 = share2 = np.full(np.shape(s1), 0.5)
    return share1, share2


def _stage_arrays(actions, s1, s2, contest, charged):
    share1, share2 = _shares(actions, s1, s2, contest.beta)
    cost1 = contest.costs[0] if actions[0] is ATTACK and charged[0] else 0.0
    cost2 = contest.costs[1] if actions[1] is ATTACK and charged[1] else 0.0
    return share1 - cost1, share2 - cost2


def resolve_stage(actions, params, success_draws, charged=(True, True)):
    """Payoffs of one round given who attacked and whose attack landed."""
    contest = params if isinstance(params, Contest) else Contest.of(params)
    draws = []
    for action, draw in zip(actions, success_draws):
        if action is COOPERATE and draw is not None:
            raise ParameterError("Success draw given for a player who did not attack")
        if action is ATTACK and draw is None:
            raise ParameterError("Attacking player needs a success draw")
        draws.append(np.array([bool(draw)]))

    payoff1, payoff2 = _stage_arrays(tuple(actions), draws[0], draws[1], contest, charged)
    return StageOutcome(
        actions=tuple(actions),
        successes=tuple(bool(draw) for draw in success_draws),
        payoffs=(float(payoff1[0]), float(payoff2[0])),
    )


def expected_stage(actions, params, charged=(True, True)):
    """Exact expectation of resolve_stage over the success outcomes."""
    contest = params if isinstance(params, Contest) else Contest.of(params)
    outcomes = []
    for action, rate in zip(actions, contest.rates):
        if action is ATTACK:
            outcomes.append(((True, rate), (False, 1 - rate)))
        else:
            outcomes.append(((None, 1.0),))

    totals = [0.0, 0.0]
    for draw1, weight1 in outcomes[0]:
        for draw2, weight2 in outcomes[1]:
            weight = weight1 * weight2
            if weight == 0:
                continue
            payoffs = resolve_stage(actions, contest, (draw1, draw2), charged).payoffs
            totals[0] += weight * payoffs[0]
            totals[1] += weight * payoffs[1]
    return tuple(totals)


def action_path(s1, s2, rounds):
    s1.reset()
    s2.reset()
    path = []
    for _ in range(rounds):
        actions = (s1.next_action(), s2.next_action())
        s1.observe(actions[1])
        s2.observe(actions[0])
        path.append(actions)
    return path


def charge_schedule(path, timing):
    """Per player, whether the attack cost is paid in each round of the path."""
    schedule = ([], [])
    attacked = [False, False]
    for actions in path:
        for player, action in enumerate(actions):
            charged = action is ATTACK and (timing is CostTiming.RECURRING or not attacked[player])
            schedule[player].append(charged)
            if action is ATTACK:
                attacked[player] = True
    return tuple(tuple(rounds) for rounds in schedule)


def _block_generator(master_seed, block):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(master_seed, spawn_key=(block,))))


def _play_block(path, schedule, config, block, size):
    contest = config.contest
    generator = _block_generator(config.master_seed, block)
    totals = np.zeros((size, 2))
    weight = 1.0
    for t, actions in enumerate(path):
        # An episode's draws do not depend on the block size
        draws = generator.random((BLOCK_SIZE, 2))[:size]
        successes1 = draws[:, 0] < contest.rates[0]
        successes2 = draws[:, 1] < contest.rates[1]
        charged = (schedule[0][t], schedule[1][t])
        payoff1, payoff2 = _stage_arrays(actions, successes1, successes2, contest, charged)
        totals[:, 0] += weight * payoff1
        totals[:, 1] += weight * payoff2
        weight *= config.delta
    return totals


def _prepare(s1, s2, config):
    path = action_path(s1, s2, config.horizon)
    return path, charge_schedule(path, config.contest.timing)


def run_episode(s1, s2, config, episode_index):
    """Discounted payoffs of one episode, reproducible from the seed and index alone."""
    if episode_index < 0:
        raise ParameterError("Episode index must be 0 or more")
    path, schedule = _prepare(s1, s2, config)
    block, row = divmod(episode_index, BLOCK_SIZE)
    totals = _play_block(path, schedule, config, block, row + 1)
    return float(totals[row, 0]), float(totals[row, 1])


def _summary(values):
    n = len(values)
    mean = math.fsum(values) / n
    if n == 1 or values.min() == values.max():
        return mean, 0.0
    variance = math.fsum((values - mean) ** 2) / (n - 1)
    return mean, math.sqrt(variance / n)


def estimate_values(s1, s2, config, threads=None):
    """Monte Carlo means and standard errors of both players' discounted payoffs."""
    path, schedule = _prepare(s1, s2, config)
    blocks = math.ceil(config.episodes / BLOCK_SIZE)
    sizes = [min(BLOCK_SIZE, config.episodes - block * BLOCK_SIZE) for block in range(blocks)]
    workers = threads or os.cpu_count() or 1
    logger.info(
        "Simulating %d episodes of %d rounds in %d blocks on %d threads",
        config.episodes,
        len(path),
        blocks,
        workers,
    )

    play = partial(_play_block, path, schedule, config)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        totals = np.concatenate(list(executor.map(play, range(blocks), sizes)))

    player1, player2 = _summary(totals[:, 0]), _summary(totals[:, 1])
    return SimReport(
        mean=(player1[0], player2[0]),
        stderr=(player1[1], player2[1]),
        episodes=config.episodes,
        horizon=len(path),
        seed=config.master_seed,
    )


def analytic_pair_value(s1, s2, params, delta, profiles=None):
    """Exact expected discounted payoffs, summing the action path up to its cycle."""
    check_discount(delta)
    contest = Contest.of(params, profiles)
    one_time = contest.timing is CostTiming.ONE_TIME_FIXED
    s1.reset()
    s2.reset()

    seen = {}
    stage_values = []
    attacked = [False, False]
    while True:
        key = (s1.state(), s2.state(), tuple(attacked) if one_time else None)
        if key in seen:
            break
        if len(stage_values) >= MAX_PATH_ROUNDS:
            raise ParameterError("Strategy pair did not settle into a cycle")
        seen[key] = len(stage_values)

        actions = (s1.next_action(), s2.next_action())
        charged = tuple(not (one_time and attacked[i]) for i in range(2))
        stage_values.append(expected_stage(actions, contest, charged))
        for i, action in enumerate(actions):
            if action is ATTACK:
                attacked[i] = True
        s1.observe(actions[1])
        s2.observe(actions[0])

    start = seen[key]
    length = len(stage_values) - start
    values = []
    for player in range(2):
        prefix = math.fsum(delta**t * stage_values[t][player] for t in range(start))
        cycle = math.fsum(delta**j * stage_values[start + j][player] for j in range(length))
        values.append(prefix + delta**start * cycle / (1 - delta**length))
    return tuple(values)


def sample_stage_payoffs(profile1, profile2, beta, samples, seed=0):
    """Monte Carlo estimate of each player's R, T, S, Q with standard errors."""
    check_unit("Degradation factor", beta)
    if samples < 2:
        raise ParameterError("Stage sampling needs 2 or more samples")
    contest = Contest((profile1.p, profile2.p), (profile1.c, profile2.c), beta)
    rng = np.random.default_rng(seed)

    estimates = {}
    for actions in ((COOPERATE, COOPERATE), (ATTACK, COOPERATE), (COOPERATE, ATTACK), (ATTACK, ATTACK)):
        draws = rng.random((samples, 2))
        successes = (draws[:, 0] < contest.rates[0], draws[:, 1] < contest.rates[1])
        payoffs = _stage_arrays(actions, *successes, contest, (True, True))
        estimates[actions] = [_summary(values) for values in payoffs]

    def matrices(index):
        first, second = (ATTACK, COOPERATE), (COOPERATE, ATTACK)
        temptation, sucker = (first, second) if index == 0 else (second, first)
        picks = {"R": (COOPERATE, COOPERATE), "T": temptation, "S": sucker, "Q": (ATTACK, ATTACK)}
        mean = PayoffMatrix(**{name: estimates[key][index][0] for name, key in picks.items()})
        error = PayoffMatrix(**{name: estimates[key][index][1] for name, key in picks.items()})
        return mean, error

    (mean1, error1), (mean2, error2) = matrices(0), matrices(1)
    return StageSample(means=(mean1, mean2), stderr=(error1, error2))


def sample_multi_stage(mp, samples, seed=0):
    """Monte Carlo estimate of one player's T, S and Q in the N-player stage game.

    The focal player is column 0 for T and Q and the first non-attacker for S.
    """
    if mp.mode is not PayoffMode.PER_PLAYER:
        raise ParameterError("Sampling estimates the per-player payoffs")
    if samples < 2:
        raise ParameterError("Stage sampling needs 2 or more samples")
    rng = np.random.default_rng(seed)
    n, m, c = mp.n, mp.m, mp.c

    def focal_share(successes, everyone_attacks):
        landed = successes.sum(axis=1)
        share = np.where(successes[:, 0], 1.0 / np.maximum(landed, 1), 0.0)
        share = np.where(landed == 0, 1.0 / n, share)
        if everyone_attacks:
            share = np.where(landed == n, mp.beta / n, share)
        return share

    partial_attack = rng.random((samples, m)) < mp.p
    full_attack = rng.random((samples, n)) < mp.p
    temptation = focal_share(partial_attack, False) - c
    sucker = np.where(partial_attack.sum(axis=1) == 0, 1.0 / n, 0.0)
    mutual = focal_share(full_attack, True) - c

    summaries = {name: _summary(values) for name, values in (("T", temptation), ("S", sucker), ("Q", mutual))}
    return StageSample(
        means={name: summary[0] for name, summary in summaries.items()},
        stderr={name: summary[1] for name, summary in summaries.items()},
    )
