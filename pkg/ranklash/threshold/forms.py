from wtforms import FloatField
from wtforms.validators import NumberRange

from ranklash.main.forms import CostForm, GameForm, SecondPlayerForm, discount_field, rate_field


class DiscountedGameForm(GameForm):
    delta = discount_field()


class AsymmetricForm(SecondPlayerForm):
    delta = discount_field()
    delta2 = discount_field()


class CostThresholdForm(CostForm):
    p = rate_field()
    delta = discount_field()


class DiscountAsymmetryForm(CostThresholdForm):
    delta2 = discount_field()


class ProbeForm(GameForm):
    step = FloatField(
        "Probe step",
        validators=[NumberRange(min=1e-12, max=0.1, message="Probe step must be between 1e-12 and 0.1")],
    )
