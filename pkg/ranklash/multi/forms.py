from wtforms import IntegerField
from wtforms.validators import NumberRange, ValidationError

from ranklash.main.forms import GameForm


class MultiForm(GameForm):
    n = IntegerField("Players", validators=[NumberRange(min=2, message="Number of players must be 2 or more")])
    m = IntegerField("Attackers", validators=[NumberRange(min=1, message="Number of attackers must be 1 or more")])

    def validate_m(self, field):
        if self.n.data is not None and field.data is not None and field.data >= self.n.data:
            raise ValidationError("Number of attackers must be below the number of players")


class TrendForm(GameForm):
    n = IntegerField("Players", validators=[NumberRange(min=3, message="Trend needs 3 or more players")])
