from flask import Blueprint

bp = Blueprint("main", __name__, cli_group=None)

from ranklash.main import commands  # noqa: E402,F401
