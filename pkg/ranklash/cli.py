import click
from flask.cli import FlaskGroup

from ranklash import create_app

cli = FlaskGroup(
    name="ranklash",
    create_app=create_app,
    add_default_commands=False,
    add_version_option=False,
    help="Analyse restraint and attack in repeated ranking-manipulation contests.",
)


def run_cli(argv=None):
    """Run one command and return its exit code: 0 success, 2 usage error, 3 domain error."""
    try:
        rv = cli.main(args=argv, prog_name="ranklash", standalone_mode=False)
    except click.ClickException as error:
        error.show()
        return error.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return rv if isinstance(rv, int) else 0
