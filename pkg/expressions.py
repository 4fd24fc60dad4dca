"""
Expression mini-language for profile curves and reparametrizations

Expressions are parsed with sympy into an expression tree, then compiled into
closures over Jet2 so one evaluation yields value, first and second
derivative.
"""
import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional

import sympy as sp
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from errors import CurveSyntaxError
from jets import ELEMENTARY, Jet2

logger = logging.getLogger(__name__)

_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_ALLOWED_CHARS = re.compile(r"^[0-9A-Za-z.+\-*/^() \t]*$")
_IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_NUMBER = re.compile(r"(?<![A-Za-z0-9.])(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
_CONSTANTS = {"pi": sp.pi}
# functions whose natural domain is not all of R
_PARTIAL_FUNCTIONS = {"log", "sqrt", "tan"}


@dataclass(frozen=True)
class CompiledExpression:
    text: str
    variable: str
    evaluate: Callable[[Jet2], Jet2]
    needs_domain: bool

    def __call__(self, x):
        return self.evaluate(x if isinstance(x, Jet2) else Jet2.constant(x))


def validate_expression(text: str, variable: str, params: Mapping[str, float]) -> tuple[bool, str]:
    """
    Check characters and identifiers before anything reaches the parser
    Returns (is_valid, error_message)
    """
    if not text or not isinstance(text, str) or not text.strip():
        return False, "Expression cannot be empty"
    if not _ALLOWED_CHARS.match(text):
        return False, f"Expression {text!r} contains characters outside the mini-language"
    allowed = {variable, *params, *ELEMENTARY, *_CONSTANTS}
    # exponent markers inside numeric literals are not names
    for name in _IDENTIFIER.findall(_NUMBER.sub(" ", text)):
        if name not in allowed:
            return False, f"Unknown name {name!r} in {text!r}"
    return True, ""


def _compile_node(node, variable: sp.Symbol, params: Mapping[str, float], flags: Dict[str, bool]):
    if node == variable:
        return lambda x: x
    if isinstance(node, sp.Symbol):
        if node.name not in params:
            raise ValueError(f"Unbound parameter {node.name!r}")
        value = float(params[node.name])
        return lambda x: Jet2.constant(value)
    if node.is_Number or isinstance(node, sp.NumberSymbol):
        value = float(node)
        return lambda x: Jet2.constant(value)
    if isinstance(node, sp.Add):
        parts = [_compile_node(arg, variable, params, flags) for arg in node.args]
        return lambda x: _fold(parts, x, lambda a, b: a + b)
    if isinstance(node, sp.Mul):
        parts = [_compile_node(arg, variable, params, flags) for arg in node.args]
        return lambda x: _fold(parts, x, lambda a, b: a * b)
    if isinstance(node, sp.Pow):
        base, exponent = node.args
        if base.has(variable):
            if exponent.is_Number and (exponent < 0 or not exponent.is_Integer):
                flags["needs_domain"] = True
            elif not exponent.is_Number:
                flags["needs_domain"] = True
        base_fn = _compile_node(base, variable, params, flags)
        exp_fn = _compile_node(exponent, variable, params, flags)
        return lambda x: base_fn(x) ** exp_fn(x)
    if isinstance(node, sp.Function):
        name = type(node).__name__
        if name not in ELEMENTARY or len(node.args) != 1:
            raise ValueError(f"Unsupported function {name!r}")
        if name in _PARTIAL_FUNCTIONS and node.args[0].has(variable):
            flags["needs_domain"] = True
        fn = ELEMENTARY[name]
        arg_fn = _compile_node(node.args[0], variable, params, flags)
        return lambda x: fn(arg_fn(x))
    raise ValueError(f"Unsupported expression node {node!r}")


def _fold(parts: List[Callable], x: Jet2, op) -> Jet2:
    result = parts[0](x)
    for part in parts[1:]:
        result = op(result, part(x))
    return result


def compile_expression(text: str, variable: str, params: Optional[Mapping[str, float]] = None) -> CompiledExpression:
    """Parse one scalar expression in `variable` and compile it to a jet function"""
    params = dict(params or {})
    is_valid, message = validate_expression(text, variable, params)
    if not is_valid:
        raise CurveSyntaxError(message)

    local_dict = {name: sp.Symbol(name, real=True) for name in [variable, *params]}
    local_dict.update({name: getattr(sp, name) for name in ELEMENTARY})
    local_dict.update(_CONSTANTS)
    try:
        tree = parse_expr(text, local_dict=local_dict, transformations=_TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TypeError, ValueError, sp.SympifyError) as e:
        raise CurveSyntaxError(f"Cannot parse {text!r}: {e}")

    flags = {"needs_domain": False}
    try:
        evaluate = _compile_node(tree, local_dict[variable], params, flags)
    except ValueError as e:
        raise CurveSyntaxError(f"{e} in {text!r}")
    logger.debug(f"Compiled {text!r} in {variable} (needs_domain={flags['needs_domain']})")
    return CompiledExpression(text.strip(), variable, evaluate, flags["needs_domain"])


def split_components(text: str) -> List[str]:
    """Split a comma-separated component list, respecting parentheses"""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return parts
