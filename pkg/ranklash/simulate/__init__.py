from flask import Blueprint

bp = Blueprint("simulate", __name__, cli_group=None)

from ranklash.simulate import commands  # noqa: E402,F401
