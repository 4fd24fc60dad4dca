"""
Tests for command-line value validation and formatting
"""
import argparse

import pytest

from utils import (format_number, format_residual, grid_arg, param_arg, parse_params, parse_range,
                   point_arg, projection_arg, range_arg, validate_input)


@pytest.mark.parametrize("text, input_type", [
    ("-1:1", "range"),
    ("0.5:2e0", "range"),
    ("10x10", "grid"),
    ("3X2", "grid"),
    ("1,3,4", "projection"),
    ("c=2.5", "param"),
    ("0.2,-1.5", "point"),
])
def test_valid_inputs(text, input_type):
    assert validate_input(text, input_type) == (True, "")


@pytest.mark.parametrize("text, input_type", [
    ("", "range"),
    ("1:1", "range"),
    ("a:b", "range"),
    ("1x10", "grid"),
    ("10", "grid"),
    ("1,1,4", "projection"),
    ("1,3,5", "projection"),
    ("1,3", "projection"),
    ("2=c", "param"),
    ("0.2", "point"),
    ("x,1", "point"),
])
def test_invalid_inputs(text, input_type):
    is_valid, message = validate_input(text, input_type)
    assert not is_valid
    assert message


def test_converters():
    assert range_arg("-1:1") == (-1.0, 1.0)
    assert grid_arg("4x3") == (4, 3)
    assert projection_arg("4,2,1") == (4, 2, 1)
    assert point_arg("0.5,1.5") == (0.5, 1.5)
    assert param_arg("c=2") == ("c", 2.0)
    with pytest.raises(argparse.ArgumentTypeError):
        range_arg("2:1")


def test_parsers():
    assert parse_range(" 0.5 : 2 ") == (0.5, 2.0)
    assert parse_params(["c=2", "k=-1"]) == {"c": 2.0, "k": -1.0}
    assert parse_params(None) == {}


def test_number_formatting():
    assert format_number(1.5) == "1.5"
    assert format_number(2.0) == "2"
    assert float(format_number(0.1 + 0.2)) == 0.1 + 0.2
    assert format_residual(1.5e-11) == "1.500e-11"
    assert format_residual(None) == "n/a"
