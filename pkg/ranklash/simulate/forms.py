from wtforms import FloatField, IntegerField
from wtforms.validators import NumberRange

from ranklash.main.forms import GameForm, discount_field, rate_field


class SimulateForm(GameForm):
    delta = discount_field()
    episodes = IntegerField("Episodes", validators=[NumberRange(min=1, message="Episodes must be 1 or more")])
    seed = IntegerField("Seed", validators=[NumberRange(min=0, message="Seed must be 0 or more")])
    epsilon = FloatField(
        "Horizon tolerance",
        validators=[NumberRange(min=1e-15, max=0.5, message="Horizon tolerance must be between 1e-15 and 0.5")],
    )
    k1 = IntegerField("First player's rounds", validators=[NumberRange(min=1, message="k must be 1 or more")])
    k2 = IntegerField("Second player's rounds", validators=[NumberRange(min=1, message="k must be 1 or more")])


class SimulateSecondPlayerForm(SimulateForm):
    p2 = rate_field("Second player's attack success rate")
    cost2 = FloatField("Cost", validators=[NumberRange(min=0, message="Cost coefficient must be 0 or more")])
    cost2_exponent = FloatField(
        "Cost exponent", validators=[NumberRange(min=0, message="Cost exponent must be 0 or more")]
    )
