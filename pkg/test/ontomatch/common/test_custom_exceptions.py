import pytest

from ontomatch.common.custom_exceptions import (
    AlignmentParseError,
    BaseAppException,
    EmptyResultError,
    GatewayResponseError,
    GatewayTransportError,
    OntologyParseError,
    UnrepairableAlignmentError,
    UserError,
)


@pytest.mark.parametrize(
    "error, exit_code",
    [
        (UserError("x"), 1),
        (AlignmentParseError("x"), 1),
        (GatewayTransportError("x"), 1),
        (EmptyResultError("x"), 2),
        (UnrepairableAlignmentError("x"), 3),
    ],
)
def test_exit_codes(error, exit_code):
    assert isinstance(error, BaseAppException)
    assert error.exit_code == exit_code


def test_ontology_parse_error_reports_position():
    error = OntologyParseError("Invalid Turtle", line=3, column=7)

    assert error.message == "Invalid Turtle (line 3, column 7)"
    assert error.line == 3
    assert error.column == 7


def test_ontology_parse_error_without_position():
    error = OntologyParseError("Invalid Turtle")

    assert error.message == "Invalid Turtle"
    assert error.line is None


def test_gateway_response_error_keeps_status_code():
    error = GatewayResponseError("bad request", status_code=400)

    assert error.status_code == 400
    assert error.exit_code == 1
