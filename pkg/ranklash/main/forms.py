from wtforms import FloatField, Form, IntegerField
from wtforms.validators import NumberRange, ValidationError


def below(maximum, message):
    def _below(form, field):
        if field.data is not None and field.data >= maximum:
            raise ValidationError(message)

    return _below


def discount_field():
    return FloatField(
        "Discount factor",
        validators=[
            NumberRange(min=0, message="Discount factor must be 0 or more"),
            below(1, "Discount factor must be below 1"),
        ],
    )


def rate_field(label="Attack success rate"):
    return FloatField(label, validators=[NumberRange(min=0, max=1, message="{} must be between 0 and 1".format(label))])


def cost_fields():
    coefficient = FloatField("Cost", validators=[NumberRange(min=0, message="Cost coefficient must be 0 or more")])
    exponent = FloatField("Cost exponent", validators=[NumberRange(min=0, message="Cost exponent must be 0 or more")])
    return coefficient, exponent


class CostForm(Form):
    cost, cost_exponent = cost_fields()
    beta = rate_field("Degradation factor")


class GameForm(CostForm):
    p = rate_field()


class SecondPlayerForm(GameForm):
    p2 = rate_field("Second player's attack success rate")
    cost2, cost2_exponent = cost_fields()


class GridForm(Form):
    points = IntegerField("Grid points", validators=[NumberRange(min=2, message="Grid needs at least 2 points")])
