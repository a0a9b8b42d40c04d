from flask import Blueprint

bp = Blueprint("region", __name__, cli_group=None)

from ranklash.region import commands  # noqa: E402,F401
