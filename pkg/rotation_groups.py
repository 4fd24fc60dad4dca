"""
One-parameter rotation subgroups and their abelian two-parameter products
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from core_algebra import Mat4, expm
from killing_fields import GeneratorId, generator

logger = logging.getLogger(__name__)


class RotationKind(Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"


class RotationPair(Enum):
    PAIR14 = "14"
    PAIR23 = "23"
    PAIR56 = "56"

    @property
    def generators(self) -> Tuple[GeneratorId, GeneratorId]:
        return _PAIR_GENERATORS[self]

    @property
    def kind(self) -> RotationKind:
        return RotationKind.ELLIPTIC if self is RotationPair.PAIR56 else RotationKind.HYPERBOLIC

    @classmethod
    def parse(cls, text) -> "RotationPair":
        raw = str(text).strip().upper().replace("PAIR", "")
        for pair in cls:
            if pair.value == raw:
                return pair
        raise ValueError(f"Unknown rotation pair: {text!r} (expected 14, 23 or 56)")


_PAIR_GENERATORS = {
    RotationPair.PAIR14: (GeneratorId.OMEGA1, GeneratorId.OMEGA4),
    RotationPair.PAIR23: (GeneratorId.OMEGA2, GeneratorId.OMEGA3),
    RotationPair.PAIR56: (GeneratorId.OMEGA5, GeneratorId.OMEGA6),
}

# coordinate plane (0-based) each generator rotates
_PLANES = {
    GeneratorId.OMEGA1: (0, 2),
    GeneratorId.OMEGA2: (0, 3),
    GeneratorId.OMEGA3: (1, 2),
    GeneratorId.OMEGA4: (1, 3),
    GeneratorId.OMEGA5: (0, 1),
    GeneratorId.OMEGA6: (2, 3),
}

_ELLIPTIC = (GeneratorId.OMEGA5, GeneratorId.OMEGA6)


def pair_generators(pair: RotationPair) -> Tuple[GeneratorId, GeneratorId]:
    return pair.generators


def flow_orientation(gid: GeneratorId) -> float:
    """
    Sign sigma with one_param_matrix(gid, p) = expm(sigma * p * A_gid).

    The displayed elliptic matrices carry +sin in their first row, which is
    the flow of the generator run backwards.
    """
    return -1.0 if gid in _ELLIPTIC else 1.0


@dataclass(frozen=True)
class OneParamMatrix:
    id: GeneratorId
    param: float
    matrix: Mat4


def _closed_form(gid: GeneratorId, param: float) -> Mat4:
    i, j = _PLANES[gid]
    m = np.eye(4)
    if gid in _ELLIPTIC:
        c, s = np.cos(param), np.sin(param)
        m[i, i] = c
        m[i, j] = s
        m[j, i] = -s
        m[j, j] = c
    else:
        ch, sh = np.cosh(param), np.sinh(param)
        m[i, i] = ch
        m[i, j] = sh
        m[j, i] = sh
        m[j, j] = ch
    return m


def one_param_matrix(gid: GeneratorId, param: float) -> OneParamMatrix:
    param = float(param)
    if not np.isfinite(param):
        raise ValueError(f"Rotation parameter must be finite, got {param}")
    return OneParamMatrix(gid, param, _closed_form(gid, param))


def one_param_derivative(gid: GeneratorId, param: float, order: int) -> Mat4:
    """d^order/dparam^order of the closed form"""
    A = flow_orientation(gid) * generator(gid).matrix
    return np.linalg.matrix_power(A, order) @ _closed_form(gid, float(param))


def verify_closed_form(gid: GeneratorId, param: float, tol: float) -> float:
    """Max-abs gap between the closed form and the series exponential"""
    if tol <= 0:
        raise ValueError("tol must be positive")
    closed = one_param_matrix(gid, param).matrix
    series = expm(flow_orientation(gid) * float(param) * generator(gid).matrix, tol / 10)
    residual = float(np.max(np.abs(closed - series)))
    logger.debug(f"{gid.label}({param:.6g}) closed-vs-series residual {residual:.3e}")
    return residual


def two_param_matrix(pair: RotationPair, p1: float, p2: float) -> Mat4:
    """Π_i(p1) Π_j(p2) for the pair's commuting generators (i, j)"""
    first, second = pair.generators
    return one_param_matrix(first, p1).matrix @ one_param_matrix(second, p2).matrix
