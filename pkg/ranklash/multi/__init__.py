from flask import Blueprint

bp = Blueprint("multi", __name__, cli_group=None)

from ranklash.multi import commands  # noqa: E402,F401
