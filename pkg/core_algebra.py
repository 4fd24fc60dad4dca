"""
Signature (-,-,+,+) linear algebra for rotsurf

Coordinates are ordered (xi, rho, vartheta, eta) = (x1, x2, x3, x4). Vectors
are numpy arrays of shape (4,), matrices of shape (4, 4) with row = output
component.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from config import CAUSAL_TOL, DEFAULT_TOL, EXPM_MAX_TERMS, EXPM_MIN_TERMS, PSEUDO_ORTHOGONAL_TOL
from errors import FailedConvergence, NonFiniteInput

logger = logging.getLogger(__name__)

Vec4 = np.ndarray
Mat4 = np.ndarray

METRIC_DIAGONAL = (-1.0, -1.0, 1.0, 1.0)

_G = np.diag(METRIC_DIAGONAL)
_G.setflags(write=False)

# first row of the formal determinant defining the ternary product
_CROSS_ROW_SIGNS = (-1.0, -1.0, 1.0, 1.0)


class CausalCharacter(Enum):
    SPACE_LIKE = "space-like"
    TIME_LIKE = "time-like"
    NULL = "null"


class QuadricType(Enum):
    PSEUDO_SPHERE = "pseudo-sphere"
    PSEUDO_HYPERBOLIC = "pseudo-hyperbolic"
    HYPERBOLIC = "hyperbolic"


def metric_matrix() -> Mat4:
    """Read-only matrix form G of the metric"""
    return _G


def as_vec4(v) -> Vec4:
    """Coerce to a finite float vector of length 4"""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (4,):
        raise NonFiniteInput(f"Expected 4 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"Non-finite vector component in {arr}")
    return arr


def as_mat4(m) -> Mat4:
    """Coerce to a finite 4x4 float matrix"""
    arr = np.asarray(m, dtype=float)
    if arr.shape != (4, 4):
        raise NonFiniteInput(f"Expected a 4x4 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("Non-finite matrix entry")
    return arr


def inner_product(u, v) -> float:
    """g(u, v) = -u1 v1 - u2 v2 + u3 v3 + u4 v4"""
    u = as_vec4(u)
    v = as_vec4(v)
    return float(-u[0] * v[0] - u[1] * v[1] + u[2] * v[2] + u[3] * v[3])


def causal_character(v) -> CausalCharacter:
    """Classify v by the exact sign of g(v, v); the zero vector is space-like"""
    v = as_vec4(v)
    if not np.any(v):
        return CausalCharacter.SPACE_LIKE
    q = inner_product(v, v)
    if q > 0:
        return CausalCharacter.SPACE_LIKE
    if q < 0:
        return CausalCharacter.TIME_LIKE
    return CausalCharacter.NULL


def causal_character_tol(v, tol: float = CAUSAL_TOL) -> CausalCharacter:
    """
    Classify v treating |g(v,v)| <= tol * |v|^2 (Euclidean) as null.
    The zero vector stays space-like.
    """
    v = as_vec4(v)
    if not np.any(v):
        return CausalCharacter.SPACE_LIKE
    q = inner_product(v, v)
    if abs(q) <= tol * float(np.dot(v, v)):
        return CausalCharacter.NULL
    return CausalCharacter.SPACE_LIKE if q > 0 else CausalCharacter.TIME_LIKE


def causal_sign(v) -> int:
    """+1 for space-like, -1 for time-like, 0 for null"""
    character = causal_character(v)
    if character is CausalCharacter.NULL:
        return 0
    return 1 if character is CausalCharacter.SPACE_LIKE else -1


def norm(v) -> float:
    """sqrt(|g(v, v)|)"""
    return float(np.sqrt(abs(inner_product(v, v))))


def cross3(x, y, z) -> Vec4:
    """
    Ternary product x ^ y ^ z: cofactor expansion of the 4x4 array whose first
    row is (-i1, -i2, i3, i4) and whose remaining rows are x, y, z.

    The result is g-orthogonal to each argument.
    """
    rows = np.vstack([as_vec4(x), as_vec4(y), as_vec4(z)])
    result = np.zeros(4)
    for k in range(4):
        minor = np.delete(rows, k, axis=1)
        det = float(np.dot(minor[0], np.cross(minor[1], minor[2])))
        result[k] = _CROSS_ROW_SIGNS[k] * (-1.0) ** k * det
    return result


def is_pseudo_orthogonal(M, tol: float = PSEUDO_ORTHOGONAL_TOL) -> Tuple[bool, float]:
    """
    Check M^T G M = G.
    Returns (is_isometry, max-abs residual)
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = as_mat4(M)
    residual = float(np.max(np.abs(M.T @ _G @ M - _G)))
    return residual <= tol, residual


def expm(M, tol: float = DEFAULT_TOL) -> Mat4:
    """
    Matrix exponential by partial sums of the power series.

    Summation stops once at least EXPM_MIN_TERMS terms are in and the next
    term's max-abs entry is <= tol. Raises FailedConvergence past
    EXPM_MAX_TERMS terms.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = as_mat4(M)
    result = np.eye(4)
    term = np.eye(4)
    summed = 1
    for k in range(1, EXPM_MAX_TERMS + 1):
        term = term @ A / k
        if summed >= EXPM_MIN_TERMS and np.max(np.abs(term)) <= tol:
            return result
        result = result + term
        summed += 1
    logger.error(f"Exponential series did not converge, max entry {np.max(np.abs(A)):.3g}")
    raise FailedConvergence(f"No convergence within {EXPM_MAX_TERMS} terms")


@dataclass(frozen=True)
class Quadric:
    kind: QuadricType
    center: Vec4 = field(default_factory=lambda: np.zeros(4))
    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"Quadric radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", as_vec4(self.center))


def quadric_residual(p, q: Quadric) -> Tuple[float, Optional[bool]]:
    """
    Membership residual of p for the quadric q.

    Returns (residual, upper_sheet). The residual is <p-m, p-m> - r^2 for the
    pseudo-sphere and <p-m, p-m> + r^2 otherwise; upper_sheet reports
    p1 > 0 for the hyperbolic space and is None for the other kinds.
    """
    p = as_vec4(p)
    d = p - q.center
    quad = inner_product(d, d)
    r2 = q.radius * q.radius
    if q.kind is QuadricType.PSEUDO_SPHERE:
        return quad - r2, None
    residual = quad + r2
    if q.kind is QuadricType.HYPERBOLIC:
        return residual, bool(p[0] > 0)
    return residual, None
