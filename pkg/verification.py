"""
Verification suites for rotsurf

Each suite runs the invariants of one layer and records named checks with
their residual and threshold. Printed-formula discrepancies are collected as
findings and never fail a run; a printed K known to be wrong is recorded as an
expected failure.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import (BUILTIN_CURVES, CURVATURE_MATCH_TOL, DEFAULT_TOL, FD_STEP, PSEUDO_ORTHOGONAL_TOL,
                    VERIFY_GROUP_PARAMS, VERIFY_GROUP_RANGE, VERIFY_IDENTITY_POINTS,
                    VERIFY_RANDOM_COEFFICIENTS, VERIFY_SEED, VERIFY_SURFACE_POINTS, VERIFY_SURFACES)
from core_algebra import (Quadric, QuadricType, cross3, expm, inner_product, is_pseudo_orthogonal,
                          quadric_residual)
from errors import DegenerateSurface, RotsurfError
from killing_fields import (COMMUTATION_RELATIONS, GeneratorId, KillingCoefficients, bracket,
                            bracket_table, commuting_pairs, field_flow, generator, is_closed_subalgebra,
                            killing_field, lie_derivative_metric)
from profile_curves import builtin_curve, fd_check
from rotation_groups import RotationPair, one_param_matrix, verify_closed_form
from rotational_surfaces import (Finding, curvature_report, fits_restriction, make_surface_spec,
                                 reduced_point, relative_gap, surface_fd_check, surface_point)
from utils import format_residual

logger = logging.getLogger(__name__)

SUITES = ("algebra", "killing", "groups", "surfaces", "all")

_FLAT_TOL = 1e-9
_EXACT_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    """
    One named check. An expected failure records a known printed-formula defect:
    it passes while the residual stays above the threshold.
    """
    name: str
    residual: float
    threshold: float
    passed: bool
    expected_failure: bool = False

    @property
    def status(self) -> str:
        if self.expected_failure:
            return "XFAIL" if self.passed else "XPASS"
        return "PASS" if self.passed else "FAIL"

    def render(self) -> str:
        status = self.status
        return f"{status}  {self.name}  residual={format_residual(self.residual)}  threshold={format_residual(self.threshold)}"


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)
    findings: List[Tuple[str, Finding]] = field(default_factory=list)
    sections: List[str] = field(default_factory=list)

    def add(self, name: str, residual: float, threshold: float, expected_failure: bool = False) -> CheckResult:
        residual = float(residual)
        within = bool(residual <= threshold)
        result = CheckResult(name, residual, threshold, within != expected_failure, expected_failure)
        self.checks.append(result)
        if expected_failure and result.passed:
            logger.warning(f"Expected failure: {name} residual {residual:.3e} > {threshold:.3e}")
        elif expected_failure:
            logger.error(f"Unexpected pass: {name} residual {residual:.3e} <= {threshold:.3e}")
        elif not result.passed:
            logger.error(f"Check failed: {name} residual {residual:.3e} > {threshold:.3e}")
        return result

    def add_flag(self, name: str, ok: bool) -> CheckResult:
        return self.add(name, 0.0 if ok else 1.0, 0.0)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def render(self) -> str:
        lines = [c.render() for c in self.checks]
        for section in self.sections:
            lines.extend(["", section])
        if self.findings:
            lines.extend(["", "Findings (printed closed forms, informational):"])
            for case, finding in self.findings:
                status = "matches" if finding.matches else "differs"
                note = f"  [{finding.note}]" if finding.note else ""
                lines.append(f"  {case}: {finding.quantity}/{finding.variant} {status} "
                             f"(max residual {format_residual(finding.residual)}){note}")
        passed = sum(1 for c in self.checks if c.passed)
        lines.extend(["", f"{passed}/{len(self.checks)} checks passed"])
        return "\n".join(lines)


class VerificationRunner:
    def __init__(self, seed: int = VERIFY_SEED):
        self.seed = seed

    def _rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def run_verification(self, suite: str = "all", tol: Optional[float] = None) -> VerificationReport:
        """Run one suite (or all) and return the report; failures are recorded, not raised"""
        if suite not in SUITES:
            raise ValueError(f"Unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        tol = DEFAULT_TOL if tol is None else tol
        report = VerificationReport()
        selected = ("algebra", "killing", "groups", "surfaces") if suite == "all" else (suite,)
        for name in selected:
            logger.info(f"Running {name} suite")
            try:
                getattr(self, f"_suite_{name}")(report, tol)
            except RotsurfError as e:
                logger.error(f"Suite {name} aborted: {e}")
                report.add_flag(f"{name} suite completed", False)
        return report

    def _suite_algebra(self, report: VerificationReport, tol: float):
        rng = self._rng()
        symmetric = bilinear = alternating = orthogonal = 0.0
        for _ in range(VERIFY_RANDOM_COEFFICIENTS):
            u, v, w = rng.uniform(-2, 2, size=(3, 4))
            a, b = rng.uniform(-2, 2, size=2)
            scale = max(1.0, np.max(np.abs([u, v, w])))
            symmetric = max(symmetric, abs(inner_product(u, v) - inner_product(v, u)))
            lhs = inner_product(a * u + b * w, v)
            rhs = a * inner_product(u, v) + b * inner_product(w, v)
            bilinear = max(bilinear, abs(lhs - rhs) / max(1.0, abs(rhs)))
            c = cross3(u, v, w)
            alternating = max(alternating, float(np.max(np.abs(c + cross3(v, u, w)))),
                              float(np.max(np.abs(c + cross3(u, w, v)))))
            orthogonal = max(orthogonal, max(abs(inner_product(c, x)) for x in (u, v, w)) / scale ** 3)
        report.add("g(u, v) symmetric", symmetric, _EXACT_TOL)
        report.add("g bilinear", bilinear, _EXACT_TOL)
        report.add("cross3 alternating", alternating, _EXACT_TOL)
        report.add("cross3 orthogonal to its arguments", orthogonal, 1e-9)
        report.add("expm(0) = I", float(np.max(np.abs(expm(np.zeros((4, 4)), tol) - np.eye(4)))), 0.0)

        split = 0.0
        for pair in RotationPair:
            gi, gj = pair.generators
            for _ in range(10):
                p, q = rng.uniform(*VERIFY_GROUP_RANGE, size=2)
                A, B = p * generator(gi).matrix, q * generator(gj).matrix
                fine = tol / 100
                split = max(split, relative_gap(expm(A + B, fine), expm(A, fine) @ expm(B, fine)))
        report.add("expm(A + B) = expm(A) expm(B) for commuting A, B", split, tol)

        sphere = Quadric(QuadricType.PSEUDO_SPHERE, radius=2.0)
        worst = 0.0
        for phi in rng.uniform(0, 2 * np.pi, size=20):
            residual, _ = quadric_residual(2.0 * np.array([0.0, 0.0, np.cos(phi), np.sin(phi)]), sphere)
            worst = max(worst, abs(residual))
        report.add("pseudo-sphere contains m + r e for unit space-like e", worst, _EXACT_TOL)

    def _suite_killing(self, report: VerificationReport, tol: float):
        rng = self._rng()
        for gid in GeneratorId:
            report.add(f"L_{gid.label} g = 0", float(np.max(np.abs(lie_derivative_metric(generator(gid))))), 0.0)

        worst = linear = 0.0
        for _ in range(VERIFY_RANDOM_COEFFICIENTS):
            c1 = KillingCoefficients(*rng.uniform(-5, 5, size=6))
            c2 = KillingCoefficients(*rng.uniform(-5, 5, size=6))
            worst = max(worst, float(np.max(np.abs(lie_derivative_metric(killing_field(c1))))))
            gap = killing_field(c1 + c2).matrix - (killing_field(c1) + killing_field(c2)).matrix
            linear = max(linear, float(np.max(np.abs(gap))))
        report.add("L_W g = 0 for random coefficients", worst, _EXACT_TOL)
        report.add("killing_field linear in coefficients", linear, _EXACT_TOL)

        table = bracket_table()
        for left, right, result in COMMUTATION_RELATIONS:
            cell = table.cell(left, right)
            report.add_flag(f"[{left.label}, {right.label}] = {result.label}",
                            cell.sign == 1 and cell.generator is result)
        report.add_flag("bracket table antisymmetric", table.is_antisymmetric())

        jacobi = 0.0
        for x, y, z in itertools.product(GeneratorId, repeat=3):
            X, Y, Z = generator(x), generator(y), generator(z)
            total = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
            jacobi = max(jacobi, float(np.max(np.abs(total.matrix))))
        report.add("Jacobi identity on all generator triples", jacobi, 0.0)

        expected = {frozenset(p.generators) for p in RotationPair}
        found = {frozenset(p) for p in commuting_pairs()}
        report.add_flag("commuting pairs are exactly {Ω1,Ω4}, {Ω2,Ω3}, {Ω5,Ω6}", found == expected)
        for pair in RotationPair:
            names = ", ".join(g.label for g in pair.generators)
            report.add_flag(f"{{{names}}} closed subalgebra", is_closed_subalgebra(pair.generators))
        report.add_flag("{Ω1, Ω2} not closed", not is_closed_subalgebra([GeneratorId.OMEGA1, GeneratorId.OMEGA2]))

        flow = 0.0
        for _ in range(VERIFY_GROUP_PARAMS):
            F = killing_field(KillingCoefficients(*rng.uniform(-1, 1, size=6)))
            M = field_flow(F, rng.uniform(*VERIFY_GROUP_RANGE), tol / 1000)
            _, residual = is_pseudo_orthogonal(M, 1.0)
            flow = max(flow, residual / max(1.0, float(np.max(np.abs(M)))) ** 2)
        report.add("flows of Killing fields are pseudo-orthogonal", flow, 1e-10)
        report.sections.append("Bracket table [row, column]:\n" + table.render())

    def _suite_groups(self, report: VerificationReport, tol: float):
        rng = self._rng()
        params = rng.uniform(*VERIFY_GROUP_RANGE, size=VERIFY_GROUP_PARAMS)
        for gid in GeneratorId:
            series = ortho = law = inverse = 0.0
            for p in params:
                q = rng.uniform(*VERIFY_GROUP_RANGE)
                M = one_param_matrix(gid, p).matrix
                series = max(series, verify_closed_form(gid, p, tol))
                ortho = max(ortho, is_pseudo_orthogonal(M)[1])
                composed = M @ one_param_matrix(gid, q).matrix
                # relative: entries of M(p + q) reach cosh(6)
                law = max(law, relative_gap(composed, one_param_matrix(gid, p + q).matrix))
                back = M @ one_param_matrix(gid, -p).matrix
                inverse = max(inverse, float(np.max(np.abs(back - np.eye(4)))))
            report.add(f"{gid.label} closed form = series exponential", series, tol)
            report.add(f"{gid.label} pseudo-orthogonal", ortho, PSEUDO_ORTHOGONAL_TOL)
            report.add(f"{gid.label} group law", law, _EXACT_TOL)
            report.add(f"{gid.label} inverse", inverse, _EXACT_TOL)

    def _suite_surfaces(self, report: VerificationReport, tol: float):
        rng = self._rng()
        self._check_curve_jets(report)
        self._check_reduced_display(report, rng)
        summary = ["Closed-form vs oracle curvature (max relative residual):"]
        for case in VERIFY_SURFACES:
            line = self._check_surface_case(report, case, rng)
            if line:
                summary.append(line)
        report.sections.append("\n".join(summary))

    def _check_curve_jets(self, report: VerificationReport):
        worst = 0.0
        for name in BUILTIN_CURVES:
            curve = builtin_curve(name)
            for s in np.linspace(0.2, 1.8, 9):
                worst = max(worst, fd_check(curve, s, FD_STEP))
        report.add("curve jets match finite differences", worst, 1e-6)

    def _check_reduced_display(self, report: VerificationReport, rng: np.random.Generator):
        for name in ("cosh14", "ex2", "cosh56"):
            entry = BUILTIN_CURVES[name]
            spec = make_surface_spec(entry['pair'], builtin_curve(name), "t+0.1*t**2", "t-0.2*t**2",
                                     restricted=True)
            worst = 0.0
            for _ in range(VERIFY_IDENTITY_POINTS):
                t, s = rng.uniform(-1.5, 1.5), rng.uniform(-2, 2)
                worst = max(worst, relative_gap(surface_point(spec, t, s), reduced_point(spec, t, s)))
            report.add(f"pair {spec.pair.value} product parametrization = reduced display ({name})",
                       worst, _EXACT_TOL)

    def _check_surface_case(self, report: VerificationReport, case: Dict, rng: np.random.Generator) -> str:
        curve = builtin_curve(case['curve'])
        pair = RotationPair.parse(case['pair'])
        spec = make_surface_spec(pair, curve, case['reparam1'], case['reparam2'],
                                 restricted=fits_restriction(curve, pair))
        label = f"{case['curve']}/{pair.value}"
        tmin, tmax = case['trange']
        smin, smax = case['srange']
        worst: Dict[str, float] = {}
        fd = iso = flat = printed_k = 0.0
        skipped = 0
        findings: Dict[Tuple[str, str], Finding] = {}

        for _ in range(VERIFY_SURFACE_POINTS):
            t, s = rng.uniform(tmin, tmax), rng.uniform(smin, smax)
            try:
                current = curvature_report(spec, t, s)
            except DegenerateSurface as e:
                skipped += 1
                logger.warning(f"{label}: skipping degenerate point ({t:.4g}, {s:.4g}): {e}")
                continue
            for key, value in current.residuals.items():
                worst[key] = max(worst.get(key, 0.0), value)
            fd = max(fd, surface_fd_check(spec, t, s, FD_STEP))

            p1, p2 = rng.uniform(-1, 1, size=2)
            moved = curvature_report(spec.shifted(p1, p2), t, s)
            iso = max(iso,
                      relative_gap([current.metric.E, current.metric.F, current.metric.G],
                                   [moved.metric.E, moved.metric.F, moved.metric.G]),
                      relative_gap(moved.K_oracle, current.K_oracle),
                      relative_gap(moved.H_normsq, current.H_normsq))
            if spec.restricted:
                iso = max(iso, relative_gap(moved.h_oracle.as_array(), current.h_oracle.as_array()))

            if case['curve'] == 'lin14':
                flat = max(flat, abs(current.K_oracle), float(np.max(np.abs(current.H_oracle))),
                           abs(current.K_closed or 0.0), float(np.max(np.abs(current.h_closed.as_array()))))

            for finding in current.findings:
                key = (finding.quantity, finding.variant)
                seen = findings.get(key)
                residual = max(finding.residual, seen.residual if seen else 0.0)
                matches = finding.matches and (seen.matches if seen else True)
                findings[key] = Finding(finding.quantity, finding.variant, residual, matches, finding.note)

            variants = [f.residual for f in current.findings if f.quantity == "K"]
            if variants:
                printed_k = max(printed_k, min(variants))

        report.add(f"{label} surface jets match finite differences", fd, 1e-6)
        report.add(f"{label} invariant under its own rotation subgroup", iso, _FLAT_TOL)
        if spec.restricted:
            for key in ("E", "G", "h", "H", "K"):
                report.add(f"{label} closed {key} = oracle {key}", worst.get(key, 0.0), CURVATURE_MATCH_TOL)
        report.add(f"{label} frame pseudo-orthonormal", worst.get("frame", 0.0), 1e-9)
        if case['curve'] == 'lin14':
            report.add(f"{label} flat: h = H = K = 0", flat, _FLAT_TOL)
        if spec.restricted:
            self._check_printed_k(report, label, case.get('printed_K', 'match'), printed_k)
        if skipped:
            logger.warning(f"{label}: {skipped} degenerate points skipped")
        report.findings.extend((label, f) for f in findings.values())

        parts = ", ".join(f"{k}={format_residual(v)}" for k, v in sorted(worst.items()))
        return f"  {label}: {parts}"

    @staticmethod
    def _check_printed_k(report: VerificationReport, label: str, expectation: str, residual: float):
        """Best printed K variant against the oracle, worst over the sampled points"""
        if expectation == 'defect':
            report.add(f"{label} printed K differs from the oracle (printed-formula defect)",
                       residual, CURVATURE_MATCH_TOL, expected_failure=True)
        else:
            report.add(f"{label} some printed K variant matches the oracle", residual, CURVATURE_MATCH_TOL)

