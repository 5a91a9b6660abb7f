import click
import pytest
from click.testing import CliRunner

from ontomatch.common.custom_exceptions import (
    EmptyResultError,
    GatewayError,
    UnrepairableAlignmentError,
    UserError,
)
from ontomatch.exception_handler import handle_exceptions


def _command_raising(error: Exception) -> click.Command:
    @click.command()
    @handle_exceptions
    def failing():
        raise error

    return failing


class TestHandleExceptions:
    def setup_method(self):
        self.runner = CliRunner(mix_stderr=False)

    @pytest.mark.parametrize(
        "error, exit_code",
        [
            (UserError("bad input"), 1),
            (GatewayError("bad input"), 1),
            (EmptyResultError("bad input"), 2),
            (UnrepairableAlignmentError("bad input"), 3),
        ],
    )
    def test_app_exceptions_set_their_exit_code(self, error, exit_code):
        result = self.runner.invoke(_command_raising(error))

        assert result.exit_code == exit_code
        assert "Error: bad input" in result.stderr

    def test_unexpected_exceptions_exit_with_1(self):
        result = self.runner.invoke(_command_raising(KeyError("secret detail")))

        assert result.exit_code == 1
        assert "Something went wrong" in result.stderr

    def test_successful_commands_are_untouched(self):
        @click.command()
        @handle_exceptions
        def succeeding():
            click.echo("done")

        result = self.runner.invoke(succeeding)

        assert result.exit_code == 0
        assert result.stdout == "done\n"
