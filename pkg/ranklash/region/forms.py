from wtforms import Form, IntegerField
from wtforms.validators import NumberRange, ValidationError

from ranklash.main.forms import CostForm, rate_field


def axis_points(label):
    return IntegerField(label, validators=[NumberRange(min=2, message="{} must be at least 2".format(label))])


def upper_bound(lower):
    def _upper_bound(form, field):
        low = form[lower].data
        if low is not None and field.data is not None and field.data <= low:
            raise ValidationError("Axis upper bound must be above its lower bound")

    return _upper_bound


class RegionForm(CostForm):
    p_points = axis_points("Success rate points")
    delta_points = axis_points("Discount factor points")
    p_lo = rate_field("Lowest success rate")
    p_hi = rate_field("Highest success rate")
    delta_lo = rate_field("Lowest discount factor")
    delta_hi = rate_field("Highest discount factor")

    def validate_p_hi(self, field):
        upper_bound("p_lo")(self, field)

    def validate_delta_hi(self, field):
        upper_bound("delta_lo")(self, field)


class FigureForm(Form):
    points = axis_points("Grid points")
