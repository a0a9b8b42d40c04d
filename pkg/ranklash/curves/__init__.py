from flask import Blueprint

bp = Blueprint("curves", __name__, cli_group=None)

from ranklash.curves import commands  # noqa: E402,F401
