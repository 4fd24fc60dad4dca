"""
Utility functions for rotsurf: text-argument validation and formatting
"""
import argparse
import logging
import re
from typing import Dict, Iterable, Optional, Tuple

from config import SIGNIFICANT_DIGITS

logger = logging.getLogger(__name__)

_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_RANGE = re.compile(rf"^\s*({_NUMBER})\s*:\s*({_NUMBER})\s*$")
_GRID = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")
_PARAM = re.compile(rf"^\s*([A-Za-z][A-Za-z0-9]*)\s*=\s*({_NUMBER})\s*$")


def format_number(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Shortest-safe decimal used by every exporter"""
    return format(float(value), f".{digits}g")


def format_residual(value: float) -> str:
    try:
        return f"{value:.3e}"
    except (TypeError, ValueError):
        return "n/a"


def validate_input(text: str, input_type: str = "text") -> Tuple[bool, str]:
    """
    Validate a command-line value by type
    Returns (is_valid, error_message)
    """
    if not text or not isinstance(text, str) or not text.strip():
        return False, "Input cannot be empty"

    if input_type == "range":
        match = _RANGE.match(text)
        if not match:
            return False, f"Invalid range {text!r}, expected a:b"
        lo, hi = float(match.group(1)), float(match.group(2))
        if not lo < hi:
            return False, f"Range {text!r} must have a < b"
        return True, ""

    elif input_type == "grid":
        match = _GRID.match(text)
        if not match:
            return False, f"Invalid grid {text!r}, expected NTxNS"
        if int(match.group(1)) < 2 or int(match.group(2)) < 2:
            return False, "Grid needs at least 2 samples per direction"
        return True, ""

    elif input_type == "projection":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            return False, f"Projection {text!r} must name 3 coordinate indices"
        indices = [int(p) for p in parts]
        if len(set(indices)) != 3 or not all(1 <= i <= 4 for i in indices):
            return False, f"Projection {text!r} needs 3 distinct indices from 1..4"
        return True, ""

    elif input_type == "param":
        if not _PARAM.match(text):
            return False, f"Invalid parameter {text!r}, expected name=value"
        return True, ""

    elif input_type == "point":
        parts = text.split(",")
        if len(parts) != 2:
            return False, f"Invalid point {text!r}, expected t,s"
        try:
            [float(p) for p in parts]
        except ValueError:
            return False, f"Invalid point {text!r}, expected two numbers"
        return True, ""

    return True, ""


def parse_range(text: str) -> Tuple[float, float]:
    match = _RANGE.match(text)
    return float(match.group(1)), float(match.group(2))


def parse_grid(text: str) -> Tuple[int, int]:
    match = _GRID.match(text)
    return int(match.group(1)), int(match.group(2))


def parse_projection(text: str) -> Tuple[int, int, int]:
    return tuple(int(p) for p in text.split(","))


def parse_params(items: Optional[Iterable[str]]) -> Dict[str, float]:
    params = {}
    for item in items or ():
        match = _PARAM.match(item)
        params[match.group(1)] = float(match.group(2))
    return params


def parse_point(text: str) -> Tuple[float, float]:
    t, s = text.split(",")
    return float(t), float(s)


def _argument_type(input_type: str, parse):
    def convert(text: str):
        is_valid, message = validate_input(text, input_type)
        if not is_valid:
            raise argparse.ArgumentTypeError(message)
        return parse(text)
    convert.__name__ = input_type
    return convert


range_arg = _argument_type("range", parse_range)
grid_arg = _argument_type("grid", parse_grid)
projection_arg = _argument_type("projection", parse_projection)
point_arg = _argument_type("point", parse_point)
param_arg = _argument_type("param", lambda text: next(iter(parse_params([text]).items())))
