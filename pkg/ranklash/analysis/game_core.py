"""Stage game between two providers that may attack each other's search ranking."""

import enum
import logging
from dataclasses import dataclass, field, replace

from ranklash.analysis.errors import ParameterError

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9
R = 0.5


class CostTiming(enum.Enum):
    RECURRING = "recurring"
    ONE_TIME_FIXED = "one-time"


@dataclass(frozen=True)
class CostModel:
    """Attack cost c = coefficient * p ** exponent."""

    coefficient: float = 0.0
    exponent: float = 0.0

    def __post_init__(self):
        if self.coefficient < 0:
            raise ParameterError("Cost coefficient must be 0 or more")
        if self.exponent < 0:
            raise ParameterError("Cost exponent must be 0 or more")

    @property
    def is_fixed(self):
        return self.exponent == 0

    def label(self):
        """Short form used in figure panel names, e.g. 0.1, 0.1p, 0.1p^2."""
        if self.exponent == 0:
            return "{:g}".format(self.coefficient)
        if self.exponent == 1:
            return "{:g}p".format(self.coefficient)
        return "{:g}p^{:g}".format(self.coefficient, self.exponent)


def check_unit(name, value):
    if not 0 <= value <= 1:
        raise ParameterError("{} must be between 0 and 1, got {!r}".format(name, value))


def check_discount(value):
    if not 0 <= value < 1:
        raise ParameterError("Discount factor must be at least 0 and below 1, got {!r}".format(value))


@dataclass(frozen=True)
class GameParams:
    p: float
    cost: CostModel = field(default_factory=CostModel)
    beta: float = 0.4
    cost_timing: CostTiming = CostTiming.RECURRING

    def __post_init__(self):
        check_unit("Attack success rate", self.p)
        check_unit("Degradation factor", self.beta)

    @property
    def c(self):
        return eval_cost(self.cost, self.p)

    def with_p(self, p):
        return replace(self, p=p)


@dataclass(frozen=True)
class PlayerProfile:
    p: float
    cost: CostModel = field(default_factory=CostModel)
    delta: float = 0.0

    def __post_init__(self):
        check_unit("Attack success rate", self.p)
        check_discount(self.delta)

    @property
    def c(self):
        return eval_cost(self.cost, self.p)


@dataclass(frozen=True)
class PayoffMatrix:
    R: float
    T: float
    S: float
    Q: float

    def as_dict(self):
        return {"R": self.R, "T": self.T, "S": self.S, "Q": self.Q}


@dataclass(frozen=True)
class OrderingReport:
    holds: bool
    violated_pairs: tuple
    analytic_bound: float
    below_bound: bool
    temptation_positive: bool


def eval_cost(model, p):
    if model.exponent == 0:
        return model.coefficient
    return model.coefficient * p**model.exponent


def _stage(p_own, p_other, c_own, beta):
    temptation = p_own + (1 - p_own) / 2 - c_own
    sucker = (1 - p_other) / 2
    mutual = p_own * (1 - p_other) + p_own * p_other * beta / 2 + (1 - p_own) * (1 - p_other) / 2 - c_own
    return PayoffMatrix(R=R, T=temptation, S=sucker, Q=mutual)


def stage_payoffs(params):
    """Expected one-round payoffs of the symmetric game for either player."""
    return _stage(params.p, params.p, params.c, params.beta)


def stage_payoffs_asymmetric(profile1, profile2, beta):
    """Expected one-round payoffs for each player when their rates and costs differ."""
    check_unit("Degradation factor", beta)
    return (
        _stage(profile1.p, profile2.p, profile1.c, beta),
        _stage(profile2.p, profile1.p, profile2.c, beta),
    )


def ordering_bound(p, beta):
    """Largest cost for which mutual attack still beats being attacked."""
    return p / 2 + (beta - 1) * p * p / 2


def check_pd_ordering(matrix, params):
    violated = []
    if not matrix.T > matrix.R:
        violated.append("T>R")
    if not matrix.R > matrix.Q:
        violated.append("R>Q")
    if not matrix.Q > matrix.S:
        violated.append("Q>S")

    bound = ordering_bound(params.p, params.beta)
    c = params.c
    if violated:
        logger.info("Prisoner's dilemma ordering violated at p=%s c=%s beta=%s: %s", params.p, c, params.beta, violated)
    return OrderingReport(
        holds=not violated,
        violated_pairs=tuple(violated),
        analytic_bound=bound,
        below_bound=c < bound,
        temptation_positive=c < params.p / 2,
    )
