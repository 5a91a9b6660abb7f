import functools

import click

from ontomatch.common.custom_exceptions import BaseAppException
from ontomatch.common.logger import AppLogger

UNEXPECTED_ERROR_MESSAGE = "Something went wrong. Please check the logs for details."
UNEXPECTED_ERROR_EXIT_CODE = 1


def handle_exceptions(command):
    """Turns exceptions raised by a command into its process exit code."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except BaseAppException as error:
            AppLogger.error("Base app exception caught: %s", error.message)
            click.echo(f"Error: {error.message}", err=True)
            click.get_current_context().exit(error.exit_code)
        except click.exceptions.Exit:
            raise
        except Exception as error:
            AppLogger.error("Something went wrong: %s", error)
            click.echo(f"Error: {UNEXPECTED_ERROR_MESSAGE}", err=True)
            click.get_current_context().exit(UNEXPECTED_ERROR_EXIT_CODE)

    return wrapper
