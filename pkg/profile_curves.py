"""
Profile curves gamma(s) = (f1, f2, f3, f4)(s) for rotsurf
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from config import (BUILTIN_CURVES, CURVE_VARIABLE, DEFAULT_CURVE_PARAMS, FD_SECOND_STEP_FLOOR,
                    REPARAM_VARIABLE, RESTRICTION_SAMPLES, UNBOUNDED_SAMPLE_WINDOW)
from errors import CurveSyntaxError, DomainRequired, DomainViolation, UnknownCurve
from expressions import CompiledExpression, compile_expression, split_components
from jets import Jet2

logger = logging.getLogger(__name__)

Component = Callable[[Jet2], Jet2]
Domain = Tuple[float, float]

ALL_REALS: Domain = (-math.inf, math.inf)


@dataclass(frozen=True)
class Curve4:
    name: str
    components: Tuple[Component, Component, Component, Component]
    domain: Domain = ALL_REALS
    expressions: Optional[Tuple[str, str, str, str]] = None
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.components) != 4:
            raise ValueError(f"A profile curve needs 4 components, got {len(self.components)}")
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError(f"Empty domain interval {self.domain}")

    def contains(self, s: float) -> bool:
        lo, hi = self.domain
        return lo <= s <= hi

    def describe(self) -> str:
        if self.expressions:
            return f"{self.name}: ({', '.join(self.expressions)})"
        return self.name


def _lift(value) -> Jet2:
    return value if isinstance(value, Jet2) else Jet2.constant(value)


def eval_jet(curve: Curve4, s: float) -> Tuple[Jet2, Jet2, Jet2, Jet2]:
    """Value, first and second derivative of every component at s"""
    s = float(s)
    if not curve.contains(s):
        raise DomainViolation(f"s={s} outside domain {curve.domain} of curve {curve.name}")
    x = Jet2.variable(s)
    jets = tuple(_lift(f(x)) for f in curve.components)
    if not all(j.is_finite() for j in jets):
        raise DomainViolation(f"Curve {curve.name} is not finite at s={s}")
    return jets


def eval_point(curve: Curve4, s: float) -> np.ndarray:
    return np.array([j.value for j in eval_jet(curve, s)])


def curve_from_expressions(text: str, params: Optional[Mapping[str, float]] = None,
                           domain: Optional[Domain] = None, name: Optional[str] = None) -> Curve4:
    """
    Build a curve from four comma-separated expressions in s, e.g.
    's+sinh(s),0,0,s+cosh(s)'. Expressions with a division need a domain.
    """
    parts = split_components(text)
    if len(parts) != 4:
        raise CurveSyntaxError(f"Expected 4 comma-separated components, got {len(parts)} in {text!r}")
    params = dict(params or {})
    compiled = [compile_expression(part, CURVE_VARIABLE, params) for part in parts]
    if domain is None:
        if any(c.needs_domain for c in compiled):
            raise DomainRequired(f"Curve {text!r} has a restricted-domain term; supply a domain interval")
        domain = ALL_REALS
    return Curve4(
        name=name or text,
        components=tuple(compiled),
        domain=(float(domain[0]), float(domain[1])),
        expressions=tuple(c.text for c in compiled),
        params=params,
    )


def curve_from_callables(components: Sequence[Component], domain: Domain = ALL_REALS,
                         name: str = "callable") -> Curve4:
    return Curve4(name=name, components=tuple(components), domain=domain)


def reparam_from_expression(text: str, params: Optional[Mapping[str, float]] = None) -> CompiledExpression:
    """Scalar reparametrization in t"""
    return compile_expression(text, REPARAM_VARIABLE, params)


def list_builtin_curves() -> List[str]:
    return list(BUILTIN_CURVES)


def builtin_curve(name: str, params: Optional[Mapping[str, float]] = None) -> Curve4:
    if name not in BUILTIN_CURVES:
        raise UnknownCurve(f"No builtin curve {name!r}; available: {', '.join(BUILTIN_CURVES)}")
    bound = dict(DEFAULT_CURVE_PARAMS)
    bound.update(params or {})
    entry = BUILTIN_CURVES[name]
    return curve_from_expressions(entry['expression'], params=bound, name=name)


def resolve_curve(text: str, params: Optional[Mapping[str, float]] = None,
                  domain: Optional[Domain] = None) -> Curve4:
    """Builtin name or expression list"""
    if text in BUILTIN_CURVES:
        return builtin_curve(text, params)
    bound = dict(DEFAULT_CURVE_PARAMS)
    bound.update(params or {})
    return curve_from_expressions(text, params=bound, domain=domain)


def sample_parameters(curve: Curve4, count: int = RESTRICTION_SAMPLES) -> np.ndarray:
    """Evenly spaced s values over the domain, clipped to a window when unbounded"""
    lo, hi = curve.domain
    win_lo, win_hi = UNBOUNDED_SAMPLE_WINDOW
    lo = lo if math.isfinite(lo) else win_lo
    hi = hi if math.isfinite(hi) else win_hi
    if not lo < hi:
        lo, hi = curve.domain
    return np.linspace(lo, hi, count)


def vanishing_residual(curve: Curve4, indices: Iterable[int], count: int = RESTRICTION_SAMPLES) -> float:
    """Largest |f_i(s)| over the sample points for the given component indices"""
    indices = list(indices)
    worst = 0.0
    for s in sample_parameters(curve, count):
        values = eval_point(curve, s)
        worst = max(worst, float(np.max(np.abs(values[indices]))))
    return worst


def _five_point_first(values: Dict[int, np.ndarray], h: float) -> np.ndarray:
    return (values[-2] - 8.0 * values[-1] + 8.0 * values[1] - values[2]) / (12.0 * h)


def _five_point_second(values: Dict[int, np.ndarray], h: float) -> np.ndarray:
    return (-values[-2] + 16.0 * values[-1] - 30.0 * values[0] + 16.0 * values[1] - values[2]) / (12.0 * h * h)


def fd_check(curve: Curve4, s: float, h: float) -> float:
    """
    Max gap between the jets and 5-point central differences.

    First differences use step h; second differences use max(h,
    FD_SECOND_STEP_FLOOR) so rounding does not swamp the comparison.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    h2 = max(h, FD_SECOND_STEP_FLOOR)
    reach = 2.0 * max(h, h2)
    if not (curve.contains(s - reach) and curve.contains(s + reach)):
        raise DomainViolation(f"Stencil [{s - reach}, {s + reach}] leaves domain {curve.domain}")

    jets = eval_jet(curve, s)
    d1 = np.array([j.d1 for j in jets])
    d2 = np.array([j.d2 for j in jets])
    first = {k: eval_point(curve, s + k * h) for k in (-2, -1, 1, 2)}
    second = {k: eval_point(curve, s + k * h2) for k in (-2, -1, 0, 1, 2)}
    residual = max(
        float(np.max(np.abs(d1 - _five_point_first(first, h)))),
        float(np.max(np.abs(d2 - _five_point_second(second, h2)))),
    )
    logger.debug(f"fd_check {curve.name} at s={s}: {residual:.3e}")
    return residual
