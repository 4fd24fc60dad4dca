"""
Second-order forward-mode automatic differentiation

A Jet2 carries (value, first derivative, second derivative) of a scalar
function of one variable and propagates them through arithmetic and the
elementary functions by the second-order chain rule.
"""
from typing import Tuple, Union

import numpy as np

Number = Union[int, float]


class Jet2:
    __slots__ = ("value", "d1", "d2")

    def __init__(self, value: float, d1: float = 0.0, d2: float = 0.0):
        self.value = float(value)
        self.d1 = float(d1)
        self.d2 = float(d2)

    @classmethod
    def variable(cls, x: float) -> "Jet2":
        """Seed for the independent variable itself"""
        return cls(x, 1.0, 0.0)

    @classmethod
    def constant(cls, c: float) -> "Jet2":
        return cls(c, 0.0, 0.0)

    def __repr__(self):
        return f"Jet2({self.value!r}, {self.d1!r}, {self.d2!r})"

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.value, self.d1, self.d2)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.as_tuple())))

    def is_constant(self) -> bool:
        return self.d1 == 0.0 and self.d2 == 0.0

    @staticmethod
    def _lift(other) -> "Jet2":
        return other if isinstance(other, Jet2) else Jet2.constant(other)

    def _compose(self, f0: float, f1: float, f2: float) -> "Jet2":
        """Jet of f(self) given f, f', f'' at self.value"""
        return Jet2(f0, f1 * self.d1, f2 * self.d1 * self.d1 + f1 * self.d2)

    def __add__(self, other):
        other = self._lift(other)
        return Jet2(self.value + other.value, self.d1 + other.d1, self.d2 + other.d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return Jet2(self.value - other.value, self.d1 - other.d1, self.d2 - other.d2)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Jet2(-self.value, -self.d1, -self.d2)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = self._lift(other)
        return Jet2(
            self.value * other.value,
            self.d1 * other.value + self.value * other.d1,
            self.d2 * other.value + 2.0 * self.d1 * other.d1 + self.value * other.d2,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        v = self.value
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = np.float64(1.0) / v
        return self._compose(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, power):
        if isinstance(power, Jet2):
            if not power.is_constant():
                return (power * self.log()).exp()
            power = power.value
        p = float(power)
        if p == 0.0:
            return Jet2.constant(1.0)
        if p == 1.0:
            return Jet2(self.value, self.d1, self.d2)
        v = np.float64(self.value)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self._compose(np.power(v, p), p * np.power(v, p - 1.0),
                                 p * (p - 1.0) * np.power(v, p - 2.0))

    def __rpow__(self, base):
        return (self * Jet2.constant(np.log(float(base)))).exp()

    def sin(self):
        s, c = np.sin(self.value), np.cos(self.value)
        return self._compose(s, c, -s)

    def cos(self):
        s, c = np.sin(self.value), np.cos(self.value)
        return self._compose(c, -s, -c)

    def tan(self):
        t = np.tan(self.value)
        sec2 = 1.0 + t * t
        return self._compose(t, sec2, 2.0 * t * sec2)

    def sinh(self):
        sh, ch = np.sinh(self.value), np.cosh(self.value)
        return self._compose(sh, ch, sh)

    def cosh(self):
        sh, ch = np.sinh(self.value), np.cosh(self.value)
        return self._compose(ch, sh, ch)

    def tanh(self):
        th = np.tanh(self.value)
        sech2 = 1.0 - th * th
        return self._compose(th, sech2, -2.0 * th * sech2)

    def exp(self):
        e = np.exp(self.value)
        return self._compose(e, e, e)

    def log(self):
        v = np.float64(self.value)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self._compose(np.log(v), 1.0 / v, -1.0 / (v * v))

    def sqrt(self):
        v = np.float64(self.value)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.sqrt(v)
            return self._compose(r, 0.5 / r, -0.25 / (r * v))


def _dispatch(name: str, numpy_fn):
    def fn(x):
        if isinstance(x, Jet2):
            return getattr(x, name)()
        return float(numpy_fn(x))
    fn.__name__ = name
    fn.__doc__ = f"{name} on floats or jets"
    return fn


sin = _dispatch("sin", np.sin)
cos = _dispatch("cos", np.cos)
tan = _dispatch("tan", np.tan)
sinh = _dispatch("sinh", np.sinh)
cosh = _dispatch("cosh", np.cosh)
tanh = _dispatch("tanh", np.tanh)
exp = _dispatch("exp", np.exp)
log = _dispatch("log", np.log)
sqrt = _dispatch("sqrt", np.sqrt)

ELEMENTARY = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
}
