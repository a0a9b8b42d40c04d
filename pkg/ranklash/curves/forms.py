from wtforms import IntegerField
from wtforms.validators import NumberRange, ValidationError

from ranklash.main.forms import CostForm, discount_field, rate_field


def rounds_field():
    return IntegerField(
        "Defection rounds", validators=[NumberRange(min=1, message="Defection rounds k must be 1 or more")]
    )


class CurvesForm(CostForm):
    delta = discount_field()
    k = rounds_field()
    points = IntegerField("Curve points", validators=[NumberRange(min=2, message="Curve needs at least 2 points")])
    p_lo = rate_field("Lowest success rate")
    p_hi = rate_field("Highest success rate")

    def validate_p_hi(self, field):
        if self.p_lo.data is not None and field.data is not None and field.data <= self.p_lo.data:
            raise ValidationError("Highest success rate must be above the lowest")


class FutileForm(CostForm):
    delta = discount_field()
    k = rounds_field()
    points = IntegerField(
        "Peak search points", validators=[NumberRange(min=3, message="Peak search needs 3 or more points")]
    )
