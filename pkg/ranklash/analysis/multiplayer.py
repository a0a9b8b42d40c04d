"""Stage payoffs and restraint thresholds when M of N providers attack."""

import enum
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import special

from ranklash.analysis.errors import ParameterError
from ranklash.analysis.game_core import CostModel, check_unit, eval_cost
from ranklash.analysis.thresholds import ThresholdReport, classify, critical_discount

logger = logging.getLogger(__name__)

# Above this many players the binomial terms are evaluated in log space
DIRECT_SUM_LIMIT = 64


class PayoffMode(enum.Enum):
    AS_WRITTEN = "as-written"
    PER_PLAYER = "per-player"


class MultiStrategy(enum.Enum):
    GRIM = "grim"
    TIT_FOR_TAT = "tft"


@dataclass(frozen=True)
class MultiParams:
    n: int
    m: int
    p: float
    cost: CostModel = field(default_factory=CostModel)
    beta: float = 0.4
    mode: PayoffMode = PayoffMode.AS_WRITTEN

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError("Number of players must be 2 or more")
        if not 1 <= self.m < self.n:
            raise ParameterError("Number of attackers must be at least 1 and below the number of players")
        check_unit("Attack success rate", self.p)
        check_unit("Degradation factor", self.beta)

    @property
    def c(self):
        return eval_cost(self.cost, self.p)


@dataclass(frozen=True)
class MultiPayoffs:
    R: float
    T: float
    S: float
    Q: float
    mode: PayoffMode

    def as_dict(self):
        return {"R": self.R, "T": self.T, "S": self.S, "Q": self.Q}


@dataclass(frozen=True)
class ModeDiscrepancy:
    as_written: MultiPayoffs
    per_player: MultiPayoffs
    temptation_difference: float
    mutual_difference: float
    disagree: bool


@dataclass(frozen=True)
class TrendPoint:
    m: int
    delta_star: float
    approximation: float


@dataclass(frozen=True)
class MultiTrend:
    points: tuple
    tail_monotone_decreasing: bool
    tail_start: int
    premise_holds: bool


def _power(x, n):
    # Repeated products, not pow()
    if n == 0:
        return 1.0
    result = x
    for _ in range(n - 1):
        result *= x
    return result


def _direct_terms(trials, ks, p, per_player):
    terms = []
    for k in ks:
        ways = math.comb(trials - 1, k - 1) if per_player else math.comb(trials, k)
        terms.append(ways * _power(p, k) * _power(1 - p, trials - k) / k)
    return terms


def _log_terms(trials, ks, p, per_player):
    ks = np.asarray(ks, dtype=float)
    if per_player:
        log_ways = special.gammaln(trials) - special.gammaln(ks) - special.gammaln(trials - ks + 1)
    else:
        log_ways = special.gammaln(trials + 1) - special.gammaln(ks + 1) - special.gammaln(trials - ks + 1)
    log_terms = log_ways + special.xlogy(ks, p) + special.xlog1py(trials - ks, -p) - np.log(ks)
    return np.exp(log_terms).tolist()


def share_sum(trials, upper, p, per_player):
    """Sum over k = 1..upper of P(k successes) times the 1/k market share."""
    ks = range(1, upper + 1)
    if trials <= DIRECT_SUM_LIMIT:
        terms = _direct_terms(trials, ks, p, per_player)
    else:
        terms = _log_terms(trials, ks, p, per_player)
    if len(terms) == 1:
        return terms[0]
    return math.fsum(sorted(terms, reverse=True))


def binomial_mass(trials, p):
    """Total probability of 0..trials successes; 1 up to rounding."""
    ks = np.arange(trials + 1, dtype=float)
    log_pmf = (
        special.gammaln(trials + 1)
        - special.gammaln(ks + 1)
        - special.gammaln(trials - ks + 1)
        + special.xlogy(ks, p)
        + special.xlog1py(trials - ks, -p)
    )
    return math.fsum(sorted(np.exp(log_pmf).tolist(), reverse=True))


def multi_stage_payoffs(mp):
    n, m, p, c = mp.n, mp.m, mp.p, mp.c
    per_player = mp.mode is PayoffMode.PER_PLAYER

    temptation = share_sum(m, m, p, per_player) + _power(1 - p, m) / n - c
    mutual = share_sum(n, n - 1, p, per_player) + _power(p, n) * mp.beta / n + _power(1 - p, n) / n - c
    return MultiPayoffs(R=1 / n, T=temptation, S=_power(1 - p, m) / n, Q=mutual, mode=mp.mode)


def mode_discrepancy(mp):
    as_written = multi_stage_payoffs(replace(mp, mode=PayoffMode.AS_WRITTEN))
    per_player = multi_stage_payoffs(replace(mp, mode=PayoffMode.PER_PLAYER))
    temptation_difference = as_written.T - per_player.T
    mutual_difference = as_written.Q - per_player.Q
    return ModeDiscrepancy(
        as_written=as_written,
        per_player=per_player,
        temptation_difference=temptation_difference,
        mutual_difference=mutual_difference,
        disagree=abs(temptation_difference) > 1e-9 or abs(mutual_difference) > 1e-9,
    )


def _ratio(payoffs, strategy):
    if strategy is MultiStrategy.GRIM:
        return critical_discount(payoffs.T - payoffs.R, payoffs.T - payoffs.Q)
    return critical_discount(payoffs.T - payoffs.R, payoffs.R - payoffs.S)


def multi_delta_star(mp, strategy):
    strategy = MultiStrategy(strategy)
    payoffs = multi_stage_payoffs(mp)
    delta_star = _ratio(payoffs, strategy)
    return ThresholdReport(delta_star=delta_star, regime=classify(delta_star), details={"payoffs": payoffs.as_dict()})


def _approximation(n, m, p, c, mutual, strategy):
    # Large-M form: the attackers' expected share is close to 1/(Mp)
    if p == 0:
        return math.nan
    share = 1 / (m * p)
    if strategy is MultiStrategy.GRIM:
        return critical_discount(share - c - 1 / n, share - c - mutual)
    return n * share - c * n - 1


def multi_trend(n, p, cost, beta, strategy, mode=PayoffMode.AS_WRITTEN):
    """Critical discount factor as the attacking coalition grows from 1 to n - 1."""
    if n < 3:
        raise ParameterError("Trend needs 3 or more players")
    strategy = MultiStrategy(strategy)
    mode = PayoffMode(mode)

    points = []
    mutual = None
    for m in range(1, n):
        mp = MultiParams(n=n, m=m, p=p, cost=cost, beta=beta, mode=mode)
        payoffs = multi_stage_payoffs(mp)
        mutual = payoffs.Q
        points.append(
            TrendPoint(
                m=m,
                delta_star=_ratio(payoffs, strategy),
                approximation=_approximation(n, m, p, mp.c, payoffs.Q, strategy),
            )
        )

    tail_start = math.ceil(n / 2)
    tail = [point.delta_star for point in points if point.m >= tail_start]
    decreasing = all(later < earlier for earlier, later in zip(tail, tail[1:]))
    logger.debug("Trend over %d coalition sizes, tail from M=%d decreasing=%s", len(points), tail_start, decreasing)
    return MultiTrend(
        points=tuple(points),
        tail_monotone_decreasing=decreasing,
        tail_start=tail_start,
        premise_holds=mutual < 1 / n,
    )
