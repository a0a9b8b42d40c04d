import functools

import click
from flask import current_app

from ranklash.analysis.errors import DomainError


class CommandError(click.ClickException):
    """Input outside an analysis's domain; exits with status 3."""

    exit_code = 3


def handle_domain_errors(f):
    @functools.wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except DomainError as error:
            current_app.logger.error("{}: {}".format(type(error).__name__, error))
            raise CommandError(str(error))

    return decorated


def validate_form(form):
    """Return the validated form or abort with its first error as a one-line message."""
    if form.validate():
        return form
    name, messages = next(iter(form.errors.items()))
    message = "--{}: {}".format(name.replace("_", "-"), messages[0])
    current_app.logger.error("{}: {}".format(type(form).__name__, message))
    raise CommandError(message)
