"""
Linear Killing vector fields on E^4_2

A linear field W(p) = A p is stored as its coefficient matrix A. The six
generators span the Killing fields of the flat metric through the origin.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from config import DEFAULT_TOL
from core_algebra import Mat4, Vec4, as_mat4, as_vec4, expm, metric_matrix
from errors import EmptyGeneratorSet, UnrecognizedBracket

logger = logging.getLogger(__name__)


class GeneratorId(Enum):
    OMEGA1 = 1
    OMEGA2 = 2
    OMEGA3 = 3
    OMEGA4 = 4
    OMEGA5 = 5
    OMEGA6 = 6

    @property
    def label(self) -> str:
        return f"Ω{self.value}"

    @classmethod
    def parse(cls, text) -> "GeneratorId":
        """Accept 1..6, 'Ω3', 'omega3' or 'OMEGA3'"""
        raw = str(text).strip().upper().replace("Ω", "").replace("OMEGA", "")
        try:
            return cls(int(raw))
        except ValueError:
            raise ValueError(f"Unknown generator: {text!r}")


# (row, col, value) entries, 0-based, row = output component
_GENERATOR_ENTRIES = {
    GeneratorId.OMEGA1: ((0, 2, 1.0), (2, 0, 1.0)),
    GeneratorId.OMEGA2: ((0, 3, 1.0), (3, 0, 1.0)),
    GeneratorId.OMEGA3: ((1, 2, 1.0), (2, 1, 1.0)),
    GeneratorId.OMEGA4: ((1, 3, 1.0), (3, 1, 1.0)),
    GeneratorId.OMEGA5: ((1, 0, 1.0), (0, 1, -1.0)),
    GeneratorId.OMEGA6: ((3, 2, 1.0), (2, 3, -1.0)),
}


@dataclass(frozen=True)
class LinearVectorField:
    matrix: Mat4

    def __post_init__(self):
        m = np.array(as_mat4(self.matrix), dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __add__(self, other: "LinearVectorField") -> "LinearVectorField":
        return LinearVectorField(self.matrix + other.matrix)

    def __sub__(self, other: "LinearVectorField") -> "LinearVectorField":
        return LinearVectorField(self.matrix - other.matrix)

    def __mul__(self, scalar: float) -> "LinearVectorField":
        return LinearVectorField(float(scalar) * self.matrix)

    __rmul__ = __mul__

    def __neg__(self) -> "LinearVectorField":
        return LinearVectorField(-self.matrix)

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def same_as(self, other: "LinearVectorField") -> bool:
        return bool(np.array_equal(self.matrix, other.matrix))


@dataclass(frozen=True)
class KillingCoefficients:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    e: float = 0.0
    f: float = 0.0

    def __add__(self, other: "KillingCoefficients") -> "KillingCoefficients":
        return KillingCoefficients(*(x + y for x, y in zip(self.as_tuple(), other.as_tuple())))

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)


# coefficient letter -> generator, in the order the general field is written
COEFFICIENT_GENERATORS = (
    ("a", GeneratorId.OMEGA2),
    ("b", GeneratorId.OMEGA3),
    ("c", GeneratorId.OMEGA1),
    ("d", GeneratorId.OMEGA4),
    ("e", GeneratorId.OMEGA6),
    ("f", GeneratorId.OMEGA5),
)


def generator(gid: GeneratorId) -> LinearVectorField:
    """Coefficient matrix of the rotation generator gid"""
    m = np.zeros((4, 4))
    for row, col, value in _GENERATOR_ENTRIES[gid]:
        m[row, col] = value
    return LinearVectorField(m)


def killing_field(c: KillingCoefficients) -> LinearVectorField:
    """a Ω2 + b Ω3 + c Ω1 + d Ω4 + e Ω6 + f Ω5"""
    m = np.zeros((4, 4))
    for letter, gid in COEFFICIENT_GENERATORS:
        m = m + getattr(c, letter) * generator(gid).matrix
    return LinearVectorField(m)


def decompose(F: LinearVectorField) -> KillingCoefficients:
    """Read the six coefficients back off a Killing matrix"""
    values = {}
    for letter, gid in COEFFICIENT_GENERATORS:
        row, col, sign = _GENERATOR_ENTRIES[gid][0]
        values[letter] = float(F.matrix[row, col]) * sign
    return KillingCoefficients(**values)


def evaluate_field(F: LinearVectorField, p) -> Vec4:
    return F.matrix @ as_vec4(p)


def lie_derivative_metric(F: LinearVectorField) -> Mat4:
    """A^T G + G A; zero exactly when F is a Killing field"""
    G = metric_matrix()
    return F.matrix.T @ G + G @ F.matrix


def is_killing(F: LinearVectorField, tol: float = 0.0) -> Tuple[bool, float]:
    residual = float(np.max(np.abs(lie_derivative_metric(F))))
    return residual <= tol, residual


def field_flow(F: LinearVectorField, param: float, tol: float = DEFAULT_TOL) -> Mat4:
    """One-parameter group exp(param A) of the field"""
    return expm(param * F.matrix, tol)


def bracket(F1: LinearVectorField, F2: LinearVectorField) -> LinearVectorField:
    """[X, Y] for X = A p, Y = B p is the linear field (BA - AB) p"""
    A = F1.matrix
    B = F2.matrix
    return LinearVectorField(B @ A - A @ B)


@dataclass(frozen=True)
class BracketCell:
    sign: int
    generator: Optional[GeneratorId]

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "BracketCell":
        return BracketCell(-self.sign, self.generator)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return ("" if self.sign > 0 else "-") + self.generator.label


ZERO_CELL = BracketCell(0, None)


def _match_generator(F: LinearVectorField) -> BracketCell:
    if F.is_zero():
        return ZERO_CELL
    for gid in GeneratorId:
        g = generator(gid).matrix
        if np.array_equal(F.matrix, g):
            return BracketCell(1, gid)
        if np.array_equal(F.matrix, -g):
            return BracketCell(-1, gid)
    raise UnrecognizedBracket(f"Bracket matrix is not a signed generator:\n{F.matrix}")


class BracketTable:
    """All 36 generator brackets [Ωi, Ωj]"""

    def __init__(self, cells: Dict[Tuple[GeneratorId, GeneratorId], BracketCell]):
        self._cells = dict(cells)

    def cell(self, left: GeneratorId, right: GeneratorId) -> BracketCell:
        return self._cells[(left, right)]

    def is_antisymmetric(self) -> bool:
        return all(self.cell(a, b) == -self.cell(b, a) for a in GeneratorId for b in GeneratorId)

    def render(self) -> str:
        """6x6 grid, row = left argument, column = right argument"""
        width = 5
        header = "[·,·]".ljust(width) + "".join(g.label.rjust(width) for g in GeneratorId)
        lines = [header]
        for a in GeneratorId:
            row = a.label.ljust(width) + "".join(str(self.cell(a, b)).rjust(width) for b in GeneratorId)
            lines.append(row)
        return "\n".join(lines)


def bracket_table() -> BracketTable:
    cells = {}
    for a in GeneratorId:
        for b in GeneratorId:
            cells[(a, b)] = _match_generator(bracket(generator(a), generator(b)))
    logger.debug("Bracket table computed")
    return BracketTable(cells)


def is_closed_subalgebra(ids: Iterable[GeneratorId]) -> bool:
    """True iff the bracket of every pair of ids lies in their span"""
    ids = list(dict.fromkeys(ids))
    if not ids:
        raise EmptyGeneratorSet("Subalgebra test needs at least one generator")
    basis = np.column_stack([generator(g).matrix.ravel() for g in ids])
    for a, b in itertools.combinations(ids, 2):
        target = bracket(generator(a), generator(b)).matrix.ravel()
        coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
        if np.max(np.abs(basis @ coeffs - target)) > 1e-12:
            return False
    return True


def commuting_pairs() -> List[Tuple[GeneratorId, GeneratorId]]:
    """Unordered generator pairs whose bracket vanishes"""
    table = bracket_table()
    return [(a, b) for a, b in itertools.combinations(GeneratorId, 2) if table.cell(a, b).is_zero]


# (left, right) -> bracket, as listed alongside the generators
COMMUTATION_RELATIONS = (
    (GeneratorId.OMEGA1, GeneratorId.OMEGA2, GeneratorId.OMEGA6),
    (GeneratorId.OMEGA1, GeneratorId.OMEGA3, GeneratorId.OMEGA5),
    (GeneratorId.OMEGA1, GeneratorId.OMEGA5, GeneratorId.OMEGA3),
    (GeneratorId.OMEGA1, GeneratorId.OMEGA6, GeneratorId.OMEGA2),
    (GeneratorId.OMEGA2, GeneratorId.OMEGA4, GeneratorId.OMEGA5),
    (GeneratorId.OMEGA2, GeneratorId.OMEGA5, GeneratorId.OMEGA4),
    (GeneratorId.OMEGA6, GeneratorId.OMEGA2, GeneratorId.OMEGA1),
    (GeneratorId.OMEGA3, GeneratorId.OMEGA4, GeneratorId.OMEGA6),
    (GeneratorId.OMEGA5, GeneratorId.OMEGA3, GeneratorId.OMEGA1),
    (GeneratorId.OMEGA3, GeneratorId.OMEGA6, GeneratorId.OMEGA4),
    (GeneratorId.OMEGA5, GeneratorId.OMEGA4, GeneratorId.OMEGA2),
    (GeneratorId.OMEGA6, GeneratorId.OMEGA4, GeneratorId.OMEGA3),
)
