import pytest

from ontomatch.common.custom_exceptions import UserError
from ontomatch.common.utilities import BaseEnum, build_error_message_list, fnv1a_64


class Colour(BaseEnum):
    RED = "red"
    BLUE = "blue"


def test_enum_values_in_declaration_order():
    assert Colour.values() == ["red", "blue"]


def test_enum_from_string():
    assert Colour.from_string("blue") is Colour.BLUE


def test_enum_from_string_rejects_unknown_value():
    with pytest.raises(ValueError, match="green is not an accepted value"):
        Colour.from_string("green")


@pytest.mark.parametrize(
    "data, expected",
    [
        ("", 0xCBF29CE484222325),
        ("a", 0xAF63DC4C8601EC8C),
        (b"a", 0xAF63DC4C8601EC8C),
    ],
)
def test_fnv1a_64_known_values(data, expected):
    assert fnv1a_64(data) == expected


def test_fnv1a_64_fits_in_64_bits():
    assert 0 <= fnv1a_64("a much longer transcript " * 50) < 2**64


@pytest.mark.parametrize(
    "error, expected",
    [
        (UserError("bad input"), ["bad input"]),
        (UserError(["first", "second"]), ["first", "second"]),
        (ValueError("plain"), ["plain"]),
    ],
)
def test_build_error_message_list(error, expected):
    assert build_error_message_list(error) == expected
