"""
Rotational surfaces S14, S23, S56 in E^4_2

A surface is the orbit of a profile curve under a two-parameter abelian
rotation subgroup: S(t, s) = Π_i(a(t)) Π_j(b(t)) gamma(s). Every curvature
quantity is computed twice: from closed forms in the curve and
reparametrization jets, and by an oracle that projects second derivatives
onto a numerically built normal plane.

Closed-form second fundamental form coefficients are taken against unit
normals and coordinate tangents, h^s_ij = g(d_i d_j S, e_s) with
(d_1, d_2) = (d/dt, d/ds).
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import (CURVATURE_MATCH_TOL, DEGENERATE_FRAME_TOL, DEGENERATE_METRIC_TOL,
                    FD_SECOND_STEP_FLOOR, RESTRICTION_ZERO_TOL)
from core_algebra import Quadric, Vec4, causal_sign, cross3, inner_product, quadric_residual
from errors import DegenerateFrame, DegenerateMetric, DomainViolation, NotRestricted, RestrictionViolation
from jets import Jet2
from profile_curves import Curve4, eval_jet, eval_point, reparam_from_expression, vanishing_residual
from rotation_groups import RotationPair, one_param_derivative, two_param_matrix

logger = logging.getLogger(__name__)

Reparam = Callable[[Jet2], Jet2]

# curve components that must vanish for the reduced parametrization
VANISHING_COMPONENTS = {
    RotationPair.PAIR14: (1, 2),
    RotationPair.PAIR23: (2, 3),
    RotationPair.PAIR56: (0, 2),
}

# causal signs of (S_t, S_s) the closed-form derivation assumes
ASSUMED_SIGNS = {
    RotationPair.PAIR14: (-1, 1),
    RotationPair.PAIR23: (1, -1),
    RotationPair.PAIR56: (-1, 1),
}

# frame signs as printed alongside the closed forms
PRINTED_EPS = {
    RotationPair.PAIR14: (-1, 1, -1, 1),
    RotationPair.PAIR23: (1, -1, 1, -1),
    RotationPair.PAIR56: (-1, 1, 1, -1),
}


class _ShiftedReparam:
    """r(t) + offset, keeping the source text for provenance"""

    def __init__(self, base: Reparam, offset: float):
        self.base = base
        self.offset = float(offset)

    def __call__(self, x: Jet2) -> Jet2:
        return _lift(self.base(x)) + self.offset


@dataclass(frozen=True)
class SurfaceSpec:
    pair: RotationPair
    curve: Curve4
    reparam1: Reparam
    reparam2: Reparam
    restricted: bool = False
    reparam_texts: Tuple[str, str] = ("t", "t")

    def shifted(self, p1: float, p2: float) -> "SurfaceSpec":
        """
        The same surface post-composed with two_param_matrix(pair, p1, p2).
        The subgroup is abelian, so this only offsets the group parameters.
        """
        texts = (f"({self.reparam_texts[0]})+{float(p1)!r}", f"({self.reparam_texts[1]})+{float(p2)!r}")
        return replace(self, reparam1=_ShiftedReparam(self.reparam1, p1),
                       reparam2=_ShiftedReparam(self.reparam2, p2), reparam_texts=texts)

    def provenance(self) -> Dict[str, object]:
        return {
            "pair": self.pair.value,
            "curve": self.curve.name,
            "curve_expressions": list(self.curve.expressions) if self.curve.expressions else None,
            "curve_params": dict(self.curve.params),
            "reparam1": self.reparam_texts[0],
            "reparam2": self.reparam_texts[1],
            "restricted": self.restricted,
        }


def _lift(value) -> Jet2:
    return value if isinstance(value, Jet2) else Jet2.constant(value)


def fits_restriction(curve: Curve4, pair: RotationPair) -> bool:
    return vanishing_residual(curve, VANISHING_COMPONENTS[pair]) <= RESTRICTION_ZERO_TOL


def make_surface_spec(pair: Union[RotationPair, str], curve: Curve4,
                      reparam1: Union[str, Reparam] = "t", reparam2: Union[str, Reparam] = "t",
                      restricted: bool = False, params: Optional[Dict[str, float]] = None) -> SurfaceSpec:
    """Build a spec; string reparams are parsed as expressions in t"""
    if not isinstance(pair, RotationPair):
        pair = RotationPair.parse(pair)
    texts = []
    reparams = []
    for r in (reparam1, reparam2):
        if isinstance(r, str):
            reparams.append(reparam_from_expression(r, params or curve.params))
            texts.append(r)
        else:
            reparams.append(r)
            texts.append(getattr(r, "__name__", "callable"))
    if restricted:
        worst = vanishing_residual(curve, VANISHING_COMPONENTS[pair])
        if worst > RESTRICTION_ZERO_TOL:
            raise RestrictionViolation(
                f"Curve {curve.name} has |f| up to {worst:.3g} in components "
                f"{[i + 1 for i in VANISHING_COMPONENTS[pair]]} required to vanish for pair {pair.value}")
    return SurfaceSpec(pair, curve, reparams[0], reparams[1], restricted, tuple(texts))


@dataclass(frozen=True)
class SurfaceJets:
    point: Vec4
    S_t: Vec4
    S_s: Vec4
    S_tt: Vec4
    S_ss: Vec4
    S_ts: Vec4

    @property
    def scale(self) -> float:
        """max(1, |S_t|^2, |S_s|^2) with Euclidean norms"""
        return max(1.0, float(np.dot(self.S_t, self.S_t)), float(np.dot(self.S_s, self.S_s)))

    def second(self, k: int, l: int) -> Vec4:
        if k == 0 and l == 0:
            return self.S_tt
        if k == 1 and l == 1:
            return self.S_ss
        return self.S_ts


@dataclass(frozen=True)
class _PointState:
    spec: SurfaceSpec
    t: float
    s: float
    a: Jet2
    b: Jet2
    f: Tuple[Jet2, Jet2, Jet2, Jet2]
    jets: SurfaceJets


def _reparam_jets(spec: SurfaceSpec, t: float) -> Tuple[Jet2, Jet2]:
    x = Jet2.variable(float(t))
    a = _lift(spec.reparam1(x))
    b = _lift(spec.reparam2(x))
    if not (a.is_finite() and b.is_finite()):
        raise DomainViolation(f"Reparametrization not finite at t={t}")
    return a, b


def _state(spec: SurfaceSpec, t: float, s: float) -> _PointState:
    a, b = _reparam_jets(spec, t)
    f = eval_jet(spec.curve, s)
    gi, gj = spec.pair.generators
    Pi = [one_param_derivative(gi, a.value, k) for k in range(3)]
    Pj = [one_param_derivative(gj, b.value, k) for k in range(3)]
    M = two_param_matrix(spec.pair, a.value, b.value)
    # d/dt of Pi(a(t)) Pj(b(t)), first and second order
    M_t = a.d1 * Pi[1] @ Pj[0] + b.d1 * Pi[0] @ Pj[1]
    M_tt = (a.d1 ** 2 * Pi[2] @ Pj[0] + 2 * a.d1 * b.d1 * Pi[1] @ Pj[1] + b.d1 ** 2 * Pi[0] @ Pj[2]
            + a.d2 * Pi[1] @ Pj[0] + b.d2 * Pi[0] @ Pj[1])
    gamma = np.array([j.value for j in f])
    gamma_s = np.array([j.d1 for j in f])
    gamma_ss = np.array([j.d2 for j in f])
    jets = SurfaceJets(
        point=M @ gamma,
        S_t=M_t @ gamma,
        S_s=M @ gamma_s,
        S_tt=M_tt @ gamma,
        S_ss=M @ gamma_ss,
        S_ts=M_t @ gamma_s,
    )
    return _PointState(spec, float(t), float(s), a, b, f, jets)


def surface_point(spec: SurfaceSpec, t: float, s: float) -> Vec4:
    a, b = _reparam_jets(spec, t)
    return two_param_matrix(spec.pair, a.value, b.value) @ eval_point(spec.curve, s)


def reduced_point(spec: SurfaceSpec, t: float, s: float) -> Vec4:
    """Reduced display of the surface for a restricted curve"""
    a, b = _reparam_jets(spec, t)
    f = eval_point(spec.curve, s)
    u, v = a.value, b.value
    if spec.pair is RotationPair.PAIR14:
        return np.array([f[0] * np.cosh(u), f[3] * np.sinh(v), f[0] * np.sinh(u), f[3] * np.cosh(v)])
    if spec.pair is RotationPair.PAIR23:
        return np.array([f[0] * np.cosh(u), f[1] * np.cosh(v), f[1] * np.sinh(v), f[0] * np.sinh(u)])
    return np.array([f[1] * np.sin(u), f[1] * np.cos(u), f[3] * np.sin(v), f[3] * np.cos(v)])


def surface_jets(spec: SurfaceSpec, t: float, s: float) -> SurfaceJets:
    return _state(spec, t, s).jets


def surface_quadric_residual(spec: SurfaceSpec, t: float, s: float, quadric: Quadric) -> Tuple[float, Optional[bool]]:
    return quadric_residual(surface_point(spec, t, s), quadric)


_FIRST_WEIGHTS = ((-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0))
_SECOND_WEIGHTS = ((-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0))


def surface_fd_check(spec: SurfaceSpec, t: float, s: float, h: float) -> float:
    """
    Max-abs gap between the five surface jets and 5-point central
    differences of surface_point. Second-order stencils, including the nested
    mixed one, use step max(h, FD_SECOND_STEP_FLOOR).
    """
    if h <= 0:
        raise ValueError("h must be positive")
    h2 = max(h, FD_SECOND_STEP_FLOOR)
    reach = 2.0 * h2
    if not (spec.curve.contains(s - reach) and spec.curve.contains(s + reach)):
        raise DomainViolation(f"Stencil around s={s} leaves domain {spec.curve.domain}")

    def P(dt: float, ds: float) -> np.ndarray:
        return surface_point(spec, t + dt, s + ds)

    jets = surface_jets(spec, t, s)
    fd_t = sum(w * P(k * h, 0.0) for k, w in _FIRST_WEIGHTS) / (12.0 * h)
    fd_s = sum(w * P(0.0, k * h) for k, w in _FIRST_WEIGHTS) / (12.0 * h)
    fd_tt = sum(w * P(k * h2, 0.0) for k, w in _SECOND_WEIGHTS) / (12.0 * h2 * h2)
    fd_ss = sum(w * P(0.0, k * h2) for k, w in _SECOND_WEIGHTS) / (12.0 * h2 * h2)
    fd_ts = sum(wk * wl * P(k * h2, l * h2) for k, wk in _FIRST_WEIGHTS for l, wl in _FIRST_WEIGHTS) / (144.0 * h2 * h2)
    residual = max(
        float(np.max(np.abs(jets.S_t - fd_t))),
        float(np.max(np.abs(jets.S_s - fd_s))),
        float(np.max(np.abs(jets.S_tt - fd_tt))),
        float(np.max(np.abs(jets.S_ss - fd_ss))),
        float(np.max(np.abs(jets.S_ts - fd_ts))),
    )
    logger.debug(f"surface_fd_check ({t}, {s}): {residual:.3e}")
    return residual


@dataclass(frozen=True)
class InducedMetric:
    E: float
    F: float
    G: float
    sign_t: int
    sign_s: int

    @property
    def determinant(self) -> float:
        return self.E * self.G - self.F * self.F


def _metric_from_jets(jets: SurfaceJets) -> InducedMetric:
    E = inner_product(jets.S_t, jets.S_t)
    F = inner_product(jets.S_t, jets.S_s)
    G = inner_product(jets.S_s, jets.S_s)
    metric = InducedMetric(E, F, G, causal_sign(jets.S_t), causal_sign(jets.S_s))
    if abs(metric.determinant) <= DEGENERATE_METRIC_TOL * jets.scale:
        raise DegenerateMetric(f"Induced metric degenerate: EG - F^2 = {metric.determinant:.3e}")
    return metric


def induced_metric(spec: SurfaceSpec, t: float, s: float) -> InducedMetric:
    return _metric_from_jets(surface_jets(spec, t, s))


@dataclass(frozen=True)
class SignRegime:
    sign_t: int
    sign_s: int
    assumed_t: int
    assumed_s: int

    @property
    def holds(self) -> bool:
        return self.sign_t == self.assumed_t and self.sign_s == self.assumed_s


def sign_regime(spec: SurfaceSpec, t: float, s: float) -> SignRegime:
    """Whether the causal signs of S_t, S_s are the ones the closed forms assume"""
    jets = surface_jets(spec, t, s)
    assumed_t, assumed_s = ASSUMED_SIGNS[spec.pair]
    return SignRegime(causal_sign(jets.S_t), causal_sign(jets.S_s), assumed_t, assumed_s)


@dataclass(frozen=True)
class Frame:
    e1: Vec4
    e2: Vec4
    e3: Vec4
    e4: Vec4
    eps: Tuple[int, int, int, int]

    @property
    def vectors(self) -> Tuple[Vec4, Vec4, Vec4, Vec4]:
        return (self.e1, self.e2, self.e3, self.e4)

    @property
    def normals(self) -> Tuple[Vec4, Vec4]:
        return (self.e3, self.e4)

    def gram(self) -> np.ndarray:
        return np.array([[inner_product(u, v) for v in self.vectors] for u in self.vectors])

    def orthonormality_residual(self) -> float:
        return float(np.max(np.abs(self.gram() - np.diag(self.eps))))


@dataclass(frozen=True)
class SecondFundamental:
    h3_11: float
    h3_12: float
    h3_22: float
    h4_11: float
    h4_12: float
    h4_22: float

    def as_array(self) -> np.ndarray:
        return np.array([self.h3_11, self.h3_12, self.h3_22, self.h4_11, self.h4_12, self.h4_22])

    def matrix(self, normal: int) -> np.ndarray:
        """Symmetric 2x2 coefficient matrix for e3 (normal=0) or e4 (normal=1)"""
        v = self.as_array()[3 * normal:3 * normal + 3]
        return np.array([[v[0], v[1]], [v[1], v[2]]])

    def h(self, normal: int, i: int, j: int) -> float:
        return float(self.matrix(normal)[i, j])


def _sign(x: float) -> int:
    return 1 if x > 0 else -1


def _orthonormalize_plane(v1: Vec4, v2: Vec4, what: str, scale: float) -> Tuple[np.ndarray, Tuple[int, int]]:
    """
    Pseudo-orthonormal basis of span(v1, v2) as a 2x2 coefficient matrix C,
    rows giving u_i = C[i,0] v1 + C[i,1] v2, plus the signs g(u_i, u_i).
    """
    V = np.vstack([v1, v2])
    candidates = [np.array(c, dtype=float) for c in ((1, 0), (0, 1), (1, 1), (1, -1))]

    def quality(c):
        u = c @ V
        size = float(np.dot(u, u))
        return abs(inner_product(u, u)) / size if size > 0 else 0.0

    first = max(candidates, key=quality)
    u = first @ V
    q1 = inner_product(u, u)
    if abs(q1) <= DEGENERATE_FRAME_TOL * scale:
        raise DegenerateFrame(f"No non-null direction in the {what} plane")
    row1 = first / np.sqrt(abs(q1))
    eps1 = _sign(q1)
    n1 = row1 @ V

    other = np.array([0.0, 1.0]) if first[1] == 0.0 else np.array([1.0, 0.0])
    row2 = other - eps1 * inner_product(other @ V, n1) * row1
    w = row2 @ V
    q2 = inner_product(w, w)
    if abs(q2) <= DEGENERATE_FRAME_TOL * scale:
        raise DegenerateFrame(f"The {what} plane is degenerate")
    row2 = row2 / np.sqrt(abs(q2))
    return np.vstack([row1, row2]), (eps1, _sign(q2))


def _normal_plane_spanners(jets: SurfaceJets) -> Tuple[Vec4, Vec4]:
    """Two independent normals among S_t ^ S_s ^ i_k"""
    candidates = [cross3(jets.S_t, jets.S_s, basis) for basis in np.eye(4)]
    first = max(candidates, key=lambda v: float(np.dot(v, v)))
    if not np.any(first):
        raise DegenerateFrame("Tangent vectors are parallel")
    unit = first / np.linalg.norm(first)

    def spread(v):
        rest = v - np.dot(v, unit) * unit
        return float(np.dot(rest, rest))

    second = max(candidates, key=spread)
    return first, second


def _numeric_normals(jets: SurfaceJets) -> Tuple[Tuple[Vec4, Vec4], Tuple[int, int]]:
    v1, v2 = _normal_plane_spanners(jets)
    size = max(1.0, float(np.dot(v1, v1)), float(np.dot(v2, v2)))
    C, eps = _orthonormalize_plane(v1, v2, "normal", size)
    V = np.vstack([v1, v2])
    return (C[0] @ V, C[1] @ V), eps


def _numeric_frame(jets: SurfaceJets) -> Frame:
    C, eps_t = _orthonormalize_plane(jets.S_t, jets.S_s, "tangent", jets.scale)
    V = np.vstack([jets.S_t, jets.S_s])
    (n3, n4), eps_n = _numeric_normals(jets)
    return Frame(C[0] @ V, C[1] @ V, n3, n4, (eps_t[0], eps_t[1], eps_n[0], eps_n[1]))


@dataclass(frozen=True)
class _ClosedForms:
    E: float
    G: float
    e3_num: np.ndarray
    e3_rad: float
    e4_num: np.ndarray
    e4_rad: float
    h3_num: Tuple[float, float, float]
    h4_num: Tuple[float, float, float]


def _closed_pair14(st: _PointState) -> _ClosedForms:
    f1, f4 = st.f[0], st.f[3]
    x, al = st.a, st.b
    xd, xdd, ad, add = x.d1, x.d2, al.d1, al.d2
    chx, shx = np.cosh(x.value), np.sinh(x.value)
    cha, sha = np.cosh(al.value), np.sinh(al.value)
    F1, F1p, F1pp = f1.as_tuple()
    F4, F4p, F4pp = f4.as_tuple()
    return _ClosedForms(
        E=F1 ** 2 * xd ** 2 - F4 ** 2 * ad ** 2,
        G=-F1p ** 2 + F4p ** 2,
        e3_num=np.array([F4 * ad * shx, F1 * xd * cha, F4 * ad * chx, F1 * xd * sha]),
        e3_rad=abs(F4 ** 2 * ad ** 2 - F1 ** 2 * xd ** 2),
        e4_num=np.array([F4p * chx, F1p * sha, F4p * shx, F1p * cha]),
        e4_rad=abs(-F1p ** 2 + F4p ** 2),
        h3_num=(F1 * F4 * (xdd * ad - xd * add), (F1p * F4 - F1 * F4p) * xd * ad, 0.0),
        h4_num=(F1p * F4 * ad ** 2 - F4p * F1 * xd ** 2, 0.0, F1p * F4pp - F1pp * F4p),
    )


def _closed_pair23(st: _PointState) -> _ClosedForms:
    f1, f2 = st.f[0], st.f[1]
    y, z = st.a, st.b
    yd, ydd, zd, zdd = y.d1, y.d2, z.d1, z.d2
    chy, shy = np.cosh(y.value), np.sinh(y.value)
    chz, shz = np.cosh(z.value), np.sinh(z.value)
    F1, F1p, F1pp = f1.as_tuple()
    F2, F2p, F2pp = f2.as_tuple()
    return _ClosedForms(
        E=F1 ** 2 * yd ** 2 + F2 ** 2 * zd ** 2,
        G=-F1p ** 2 - F2p ** 2,
        e3_num=np.array([F2 * zd * shy, -F1 * yd * shz, -F1 * yd * chz, F2 * zd * chy]),
        e3_rad=F1 ** 2 * yd ** 2 + F2 ** 2 * zd ** 2,
        e4_num=np.array([F2p * chy, -F1p * chz, -F1p * shz, F2p * shy]),
        e4_rad=F1p ** 2 + F2p ** 2,
        h3_num=(F1 * F2 * (ydd * zd - yd * zdd), (F1p * F2 - F1 * F2p) * yd * zd, 0.0),
        h4_num=(F1p * F2 * zd ** 2 - F1 * F2p * yd ** 2, 0.0, F1p * F2pp - F1pp * F2p),
    )


def _closed_pair56(st: _PointState) -> _ClosedForms:
    f2, f4 = st.f[1], st.f[3]
    be, th = st.a, st.b
    bd, bdd, td, tdd = be.d1, be.d2, th.d1, th.d2
    cb, sb = np.cos(be.value), np.sin(be.value)
    ct, stt = np.cos(th.value), np.sin(th.value)
    F2, F2p, F2pp = f2.as_tuple()
    F4, F4p, F4pp = f4.as_tuple()
    return _ClosedForms(
        E=-F2 ** 2 * bd ** 2 + F4 ** 2 * td ** 2,
        G=-F2p ** 2 + F4p ** 2,
        e3_num=np.array([-F4 * td * cb, F4 * td * sb, -F2 * bd * ct, F2 * bd * stt]),
        e3_rad=abs(F4 ** 2 * td ** 2 - F2 ** 2 * bd ** 2),
        e4_num=np.array([F4p * sb, F4p * cb, F2p * stt, F2p * ct]),
        e4_rad=abs(F4p ** 2 - F2p ** 2),
        h3_num=(F4 * F2 * (td * bdd - bd * tdd), (F2p * F4 - F2 * F4p) * bd * td, 0.0),
        h4_num=(F4p * F2 * bd ** 2 - F2p * F4 * td ** 2, 0.0, F2p * F4pp - F2pp * F4p),
    )


_CLOSED = {
    RotationPair.PAIR14: _closed_pair14,
    RotationPair.PAIR23: _closed_pair23,
    RotationPair.PAIR56: _closed_pair56,
}


def _require_restricted(spec: SurfaceSpec):
    if not spec.restricted:
        raise NotRestricted("Closed forms need a restricted spec (reduced parametrization)")


def _closed_forms(st: _PointState) -> _ClosedForms:
    _require_restricted(st.spec)
    closed = _CLOSED[st.spec.pair](st)
    threshold = DEGENERATE_FRAME_TOL * st.jets.scale
    for name, rad in (("E", abs(closed.E)), ("G", abs(closed.G)), ("e3", closed.e3_rad), ("e4", closed.e4_rad)):
        if rad <= threshold:
            raise DegenerateFrame(f"Radicand {name} = {rad:.3e} vanishes at (t, s) = ({st.t}, {st.s})")
    return closed


def _closed_frame(st: _PointState, closed: _ClosedForms) -> Frame:
    e1 = st.jets.S_t / np.sqrt(abs(closed.E))
    e2 = st.jets.S_s / np.sqrt(abs(closed.G))
    e3 = closed.e3_num / np.sqrt(closed.e3_rad)
    e4 = closed.e4_num / np.sqrt(closed.e4_rad)
    eps = tuple(_sign(inner_product(e, e)) for e in (e1, e2, e3, e4))
    return Frame(e1, e2, e3, e4, eps)


def _closed_second_fundamental(closed: _ClosedForms) -> SecondFundamental:
    n3 = np.sqrt(closed.e3_rad)
    n4 = np.sqrt(closed.e4_rad)
    return SecondFundamental(*(v / n3 for v in closed.h3_num), *(v / n4 for v in closed.h4_num))


def _frame_for(st: _PointState) -> Frame:
    if st.spec.restricted:
        return _closed_frame(st, _closed_forms(st))
    return _numeric_frame(st.jets)


def moving_frame(spec: SurfaceSpec, t: float, s: float) -> Frame:
    """
    Closed-form frame for restricted specs (normalized S_t, S_s and the
    normals of the reduced surface), numeric pseudo-orthonormal frame
    otherwise. Signs are always read off the vectors.
    """
    return _frame_for(_state(spec, t, s))


def second_fundamental_closed(spec: SurfaceSpec, t: float, s: float) -> SecondFundamental:
    return _closed_second_fundamental(_closed_forms(_state(spec, t, s)))


def _tangent_coefficients(st: _PointState) -> np.ndarray:
    """Rows express moving_frame's e1, e2 in terms of (S_t, S_s)"""
    if st.spec.restricted:
        closed = _closed_forms(st)
        return np.diag([1.0 / np.sqrt(abs(closed.E)), 1.0 / np.sqrt(abs(closed.G))])
    C, _ = _orthonormalize_plane(st.jets.S_t, st.jets.S_s, "tangent", st.jets.scale)
    return C


def _oracle_coefficients(jets: SurfaceJets, frame: Frame, C: np.ndarray) -> SecondFundamental:
    values = []
    for normal in frame.normals:
        for i, j in ((0, 0), (0, 1), (1, 1)):
            vec = sum(C[i, k] * C[j, l] * jets.second(k, l) for k in range(2) for l in range(2))
            values.append(inner_product(vec, normal))
    return SecondFundamental(*values)


def second_fundamental_oracle(spec: SurfaceSpec, t: float, s: float, orthonormal: bool = False) -> SecondFundamental:
    """
    Projections g(d_i d_j S, e_s) onto the normals of moving_frame. With
    orthonormal=True the tangent directions are the unit tangents instead of
    the coordinate ones.
    """
    st = _state(spec, t, s)
    C = _tangent_coefficients(st) if orthonormal else np.eye(2)
    return _oracle_coefficients(st.jets, _frame_for(st), C)


def _h_vectors(jets: SurfaceJets, normals: Sequence[Vec4], normal_eps: Sequence[int]):
    """h(u_i, u_j) as ambient vectors for the unit tangents u_i"""
    C, eps_t = _orthonormalize_plane(jets.S_t, jets.S_s, "tangent", jets.scale)

    def project(v):
        return sum(e * inner_product(v, n) * n for n, e in zip(normals, normal_eps))

    coord = {(k, l): project(jets.second(k, l)) for k in range(2) for l in range(2)}

    def h(i, j):
        return sum(C[i, k] * C[j, l] * coord[(k, l)] for k in range(2) for l in range(2))

    return h(0, 0), h(0, 1), h(1, 1), eps_t


def gaussian_curvature_from_normals(jets: SurfaceJets, normals: Sequence[Vec4], normal_eps: Sequence[int]) -> float:
    """Gauss equation K = eps1 eps2 (g(h11, h22) - g(h12, h12)) with the given normal frame"""
    h11, h12, h22, eps_t = _h_vectors(jets, normals, normal_eps)
    return eps_t[0] * eps_t[1] * (inner_product(h11, h22) - inner_product(h12, h12))


def _oracle_curvatures(jets: SurfaceJets) -> Tuple[Vec4, float]:
    normals, eps_n = _numeric_normals(jets)
    h11, h12, h22, eps_t = _h_vectors(jets, normals, eps_n)
    H = 0.5 * (eps_t[0] * h11 + eps_t[1] * h22)
    K = eps_t[0] * eps_t[1] * (inner_product(h11, h22) - inner_product(h12, h12))
    return H, K


def _closed_curvatures(closed: _ClosedForms, frame: Frame, h: SecondFundamental) -> Tuple[Vec4, float]:
    """Mean curvature vector and Gauss curvature assembled from the closed coefficients (F = 0)"""
    H = np.zeros(4)
    K_num = 0.0
    for normal, e_s in enumerate(frame.normals):
        eps_s = frame.eps[2 + normal]
        m = h.matrix(normal)
        H = H + 0.5 * eps_s * (m[0, 0] / closed.E + m[1, 1] / closed.G) * e_s
        K_num += eps_s * (m[0, 0] * m[1, 1] - m[0, 1] ** 2)
    return H, K_num / (closed.E * closed.G)


def mean_curvature(spec: SurfaceSpec, t: float, s: float) -> Tuple[Optional[Vec4], Vec4]:
    """(H_closed, H_oracle); H_closed is None for unrestricted specs"""
    st = _state(spec, t, s)
    H_oracle, _ = _oracle_curvatures(st.jets)
    if not spec.restricted:
        return None, H_oracle
    closed = _closed_forms(st)
    frame = _closed_frame(st, closed)
    H_closed, _ = _closed_curvatures(closed, frame, _closed_second_fundamental(closed))
    return H_closed, H_oracle


def gaussian_curvature(spec: SurfaceSpec, t: float, s: float) -> Tuple[Optional[float], float]:
    """(K_closed, K_oracle); K_closed is None for unrestricted specs"""
    st = _state(spec, t, s)
    _, K_oracle = _oracle_curvatures(st.jets)
    if not spec.restricted:
        return None, K_oracle
    closed = _closed_forms(st)
    frame = _closed_frame(st, closed)
    _, K_closed = _closed_curvatures(closed, frame, _closed_second_fundamental(closed))
    return K_closed, K_oracle


@dataclass(frozen=True)
class PrintedForms:
    """The closed forms exactly as printed, including their known slips"""
    eps: Tuple[int, int, int, int]
    e3: Vec4
    e4: Vec4
    h: SecondFundamental
    H_statement: Vec4
    H_proof: Vec4
    K_statement: float
    K_proof: float
    radicand_readings: Dict[str, float] = field(default_factory=dict)


def _unit(num: np.ndarray, rad: float) -> np.ndarray:
    return num / np.sqrt(abs(rad))


def _printed_pair14(st: _PointState) -> PrintedForms:
    x, al = st.a, st.b
    xd, xdd, ad, add = x.d1, x.d2, al.d1, al.d2
    chx, shx = np.cosh(x.value), np.sinh(x.value)
    cha, sha = np.cosh(al.value), np.sinh(al.value)
    F1, F1p, F1pp = st.f[0].as_tuple()
    F4, F4p, F4pp = st.f[3].as_tuple()
    N2 = F4 ** 2 * ad ** 2 - F1 ** 2 * xd ** 2
    M2 = -F1p ** 2 + F4p ** 2
    N, M = np.sqrt(abs(N2)), np.sqrt(abs(M2))
    e3 = _unit(np.array([F4 * ad * shx, F1 * xd * cha, F4 * ad * chx, F1 * xd * sha]), N2)
    e4 = _unit(np.array([F4p * chx, F1p * sha, F4p * shx, F1p * cha]), M2)
    h = SecondFundamental(
        F1 * F4 * (xdd * ad + xd * add) / N, (F1p * F4 - F1 * F4p) * xd * ad / N, 0.0,
        (F1p * F4 * ad ** 2 - F4p * F1 * xd ** 2) / M, 0.0, (F1p * F4pp - F1pp * F4p) / M)
    c3 = F1 * F4 * (xdd * ad + xd * add) / (2 * N) + (F4p * F1 * xd ** 2 - F1p * F4 * ad ** 2) / (2 * M)
    c4 = (F1p * F4pp - F1pp * F4p) / (2 * M)
    H = c3 * e3 + c4 * e4
    K = ((F1p * F4 - F1 * F4p) ** 2 * (xd * ad) ** 2 / N2
         + (F1p * F4 * ad ** 2 - F4p * F1 * xd ** 2) * (F1p * F4pp - F1pp * F4p) / M2)
    return PrintedForms(PRINTED_EPS[RotationPair.PAIR14], e3, e4, h, H, H.copy(), K, K)


def _printed_pair23(st: _PointState) -> PrintedForms:
    y, z = st.a, st.b
    yd, ydd, zd, zdd = y.d1, y.d2, z.d1, z.d2
    chy, shy = np.cosh(y.value), np.sinh(y.value)
    chz, shz = np.cosh(z.value), np.sinh(z.value)
    F1, F1p, F1pp = st.f[0].as_tuple()
    F2, F2p, F2pp = st.f[1].as_tuple()
    N2 = F2 ** 2 * zd + F1 ** 2 * yd
    M2 = F1p ** 2 + F2p ** 2
    N, M = np.sqrt(abs(N2)), np.sqrt(abs(M2))
    e3 = _unit(np.array([F2 * zd * shy, F1 * yd * shz, F1 * yd * chz, F2 * zd * chy]), N2)
    e4 = _unit(np.array([F2p * chy, F1p * chz, F1p * shz, F2p * shy]), M2)
    h = SecondFundamental(
        F1 * F2 * (yd * zdd + ydd * zd) / N, (F1 * F2p + F1p * F2) * yd * zd / N, 0.0,
        (-F1 * F2p * yd ** 2 - F1p * F2 * zd ** 2) / M, 0.0, (-F1pp * F2p - F1p * F2pp) / M)
    c3 = F1 * F2 * (yd * zdd + ydd * zd) / (2 * N)
    c4 = (F1 * F2p * yd ** 2 + F1p * F2 * zd ** 2 - F1pp * F2p - F1p * F2pp) / (2 * M)
    H = c3 * e3 + c4 * e4
    K = (-(F1 * F2p + F1p * F2) ** 2 * (yd * zd) ** 2 / N2
         - (F1 * F2p * yd ** 2 + F1p * F2 * zd ** 2) * (F1pp * F2p + F1p * F2pp) / M2)
    readings = {"printed": N2, "squared": F2 ** 2 * zd ** 2 + F1 ** 2 * yd ** 2}
    return PrintedForms(PRINTED_EPS[RotationPair.PAIR23], e3, e4, h, H, H.copy(), K, K, readings)


def _printed_pair56(st: _PointState) -> PrintedForms:
    be, th = st.a, st.b
    bd, bdd, td, tdd = be.d1, be.d2, th.d1, th.d2
    cb, sb = np.cos(be.value), np.sin(be.value)
    ct, stt = np.cos(th.value), np.sin(th.value)
    F2, F2p, F2pp = st.f[1].as_tuple()
    F4, F4p, F4pp = st.f[3].as_tuple()
    N2 = -F2 ** 2 * bd ** 2 + F4 ** 2 * td
    M2 = -F2p ** 2 + F4p ** 2
    N, M = np.sqrt(abs(N2)), np.sqrt(abs(M2))
    e3 = _unit(np.array([-F4 * td * cb, F4 * td * sb, -F2 * bd * ct, F2 * bd * stt]), N2)
    e4 = _unit(np.array([F4p * sb, F4p * cb, F2p * stt, F2p * ct]), M2)
    h = SecondFundamental(
        F4 * F2 * (td * bdd - bd * tdd) / N, (F2p * F4 - F2 * F4p) * bd * td / N, 0.0,
        (F4p * F2 * bd ** 2 - F2p * F4 * td ** 2) / M, 0.0, (-F2pp * F4p + F2p * F4pp) / M)
    c4 = (F4p * F2 * bd ** 2 - F2p * F4 * td ** 2 + F2pp * F4p - F2p * F4pp) / (2 * M)
    H_statement = F4 * F2 * (bd * tdd - td * bdd) / (2 * N) * e3 + c4 * e4
    H_proof = -F4 * F2 * (td * bdd - bd * tdd) / (2 * N) * e3 + c4 * e4
    K = (-(F2p * F4 - F2 * F4p) ** 2 * (bd * td) ** 2 / N2
         - (-F2pp * F4p + F2p * F4pp) * (F4p * F2 * bd ** 2 - F2p * F4 * td ** 2) ** 2 / M2)
    readings = {"printed": N2, "squared": -F2 ** 2 * bd ** 2 + F4 ** 2 * td ** 2}
    return PrintedForms(PRINTED_EPS[RotationPair.PAIR56], e3, e4, h, H_statement, H_proof, K, K, readings)


_PRINTED = {
    RotationPair.PAIR14: _printed_pair14,
    RotationPair.PAIR23: _printed_pair23,
    RotationPair.PAIR56: _printed_pair56,
}


def printed_variants(spec: SurfaceSpec, t: float, s: float) -> PrintedForms:
    _require_restricted(spec)
    st = _state(spec, t, s)
    _closed_forms(st)
    return _PRINTED[spec.pair](st)


def printed_frame(spec: SurfaceSpec, t: float, s: float) -> Frame:
    """Tangents as in moving_frame, normals and signs exactly as printed"""
    forms = printed_variants(spec, t, s)
    frame = moving_frame(spec, t, s)
    return Frame(frame.e1, frame.e2, forms.e3, forms.e4, forms.eps)


@dataclass(frozen=True)
class Finding:
    quantity: str
    variant: str
    residual: float
    matches: bool
    note: str = ""

    def to_dict(self) -> Dict[str, object]:
        return {"quantity": self.quantity, "variant": self.variant, "residual": self.residual,
                "matches": self.matches, "note": self.note}


def relative_gap(a, b) -> float:
    """max|a - b| / max(1, max|b|)"""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


def _findings(st: _PointState, frame: Frame, metric: InducedMetric, h_oracle: SecondFundamental,
              H_oracle: Vec4, K_oracle: float) -> List[Finding]:
    printed = _PRINTED[st.spec.pair](st)
    tol = CURVATURE_MATCH_TOL
    found = []

    def add(quantity, variant, residual, note=""):
        found.append(Finding(quantity, variant, residual, residual <= tol, note))

    add("h", "printed", relative_gap(printed.h.as_array(), h_oracle.as_array()))
    add("H", "statement", relative_gap(printed.H_statement, H_oracle))
    add("H", "proof", relative_gap(printed.H_proof, H_oracle))
    add("K", "statement", relative_gap(printed.K_statement, K_oracle))
    add("K", "proof", relative_gap(printed.K_proof, K_oracle))
    scaled = printed.K_statement / abs(metric.E * metric.G)
    add("K", "statement/|EG|", relative_gap(scaled, K_oracle), "printed K without the 1/(EG) factor")
    eps_match = tuple(printed.eps) == tuple(frame.eps)
    found.append(Finding("eps", "printed", 0.0 if eps_match else 1.0, eps_match,
                         f"printed {printed.eps}, actual {frame.eps}"))
    normal_gap = max(abs(inner_product(n, v)) / max(1.0, float(np.linalg.norm(v)))
                     for n in (printed.e3, printed.e4) for v in (st.jets.S_t, st.jets.S_s))
    add("normals", "printed", normal_gap, "g(e_printed, S_t), g(e_printed, S_s)")
    for reading, value in printed.radicand_readings.items():
        add("radicand", reading, relative_gap(abs(value), abs(metric.E)), "against |<S_t, S_t>|")
    regime = ASSUMED_SIGNS[st.spec.pair]
    holds = (metric.sign_t, metric.sign_s) == regime
    found.append(Finding("signs", "assumed", 0.0 if holds else 1.0, holds,
                         f"assumed (sign_t, sign_s) = {regime}, actual ({metric.sign_t}, {metric.sign_s})"))
    for item in found:
        if not item.matches:
            logger.debug(f"Finding at ({st.t}, {st.s}) pair {st.spec.pair.value}: "
                         f"{item.quantity}/{item.variant} residual {item.residual:.3e} {item.note}")
    return found


@dataclass(frozen=True)
class CurvatureReport:
    t: float
    s: float
    metric: InducedMetric
    frame: Frame
    h_closed: Optional[SecondFundamental]
    h_oracle: SecondFundamental
    H_closed: Optional[Vec4]
    H_oracle: Vec4
    K_closed: Optional[float]
    K_oracle: float
    residuals: Dict[str, float]
    findings: List[Finding] = field(default_factory=list)

    @property
    def H_normsq(self) -> float:
        return inner_product(self.H_oracle, self.H_oracle)

    def to_dict(self) -> Dict[str, object]:
        def vec(v):
            return None if v is None else [float(x) for x in v]

        def sff(h):
            return None if h is None else dict(zip(("h3_11", "h3_12", "h3_22", "h4_11", "h4_12", "h4_22"),
                                                   (float(x) for x in h.as_array())))
        return {
            "t": self.t,
            "s": self.s,
            "metric": {"E": self.metric.E, "F": self.metric.F, "G": self.metric.G,
                       "sign_t": self.metric.sign_t, "sign_s": self.metric.sign_s},
            "frame": {"e1": vec(self.frame.e1), "e2": vec(self.frame.e2), "e3": vec(self.frame.e3),
                      "e4": vec(self.frame.e4), "eps": list(self.frame.eps)},
            "h_closed": sff(self.h_closed),
            "h_oracle": sff(self.h_oracle),
            "H_closed": vec(self.H_closed),
            "H_oracle": vec(self.H_oracle),
            "K_closed": self.K_closed,
            "K_oracle": self.K_oracle,
            "H2": self.H_normsq,
            "residuals": dict(self.residuals),
            "findings": [f.to_dict() for f in self.findings],
        }


def curvature_report(spec: SurfaceSpec, t: float, s: float) -> CurvatureReport:
    """
    All curvature quantities at (t, s). Closed-vs-oracle mismatches are
    reported as relative residuals, never raised.
    """
    st = _state(spec, t, s)
    metric = _metric_from_jets(st.jets)
    frame = _frame_for(st)
    h_oracle = _oracle_coefficients(st.jets, frame, np.eye(2))
    H_oracle, K_oracle = _oracle_curvatures(st.jets)

    h_closed = H_closed = K_closed = None
    residuals: Dict[str, float] = {}
    findings: List[Finding] = []
    if spec.restricted:
        closed = _closed_forms(st)
        h_closed = _closed_second_fundamental(closed)
        H_closed, K_closed = _closed_curvatures(closed, frame, h_closed)
        residuals = {
            "E": relative_gap(closed.E, metric.E),
            "G": relative_gap(closed.G, metric.G),
            "h": relative_gap(h_closed.as_array(), h_oracle.as_array()),
            "H": relative_gap(H_closed, H_oracle),
            "K": relative_gap(K_closed, K_oracle),
        }
        findings = _findings(st, frame, metric, h_oracle, H_oracle, K_oracle)
    residuals["frame"] = frame.orthonormality_residual()
    return CurvatureReport(st.t, st.s, metric, frame, h_closed, h_oracle, H_closed, H_oracle,
                           K_closed, K_oracle, residuals, findings)
