from flask import Blueprint

bp = Blueprint("threshold", __name__, cli_group=None)

from ranklash.threshold import commands  # noqa: E402,F401
