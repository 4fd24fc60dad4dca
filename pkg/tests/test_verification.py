"""
Tests for the verification suites and their report
"""
import numpy as np
import pytest

from config import CURVATURE_MATCH_TOL, PSEUDO_ORTHOGONAL_TOL
from killing_fields import GeneratorId
from rotation_groups import one_param_matrix
from rotational_surfaces import Finding
from verification import SUITES, VerificationReport, VerificationRunner


@pytest.fixture(scope="module")
def runner():
    return VerificationRunner()


@pytest.fixture(scope="module")
def surfaces(runner):
    return runner.run_verification("surfaces")


def _check(report, name):
    matches = [c for c in report.checks if c.name == name]
    assert len(matches) == 1, name
    return matches[0]


class TestSuites:
    @pytest.mark.parametrize("suite", ["algebra", "killing", "groups"])
    def test_suite_passes(self, runner, suite):
        report = runner.run_verification(suite)
        assert report.checks
        failed = [c.name for c in report.checks if not c.passed]
        assert failed == []
        assert report.exit_code == 0

    def test_killing_checks_every_generator(self, runner):
        report = runner.run_verification("killing")
        names = [c.name for c in report.checks]
        assert sum(1 for n in names if n.startswith("L_Ω") and n.endswith("g = 0")) == 6
        assert any("[·,·]" in section for section in report.sections)

    def test_surfaces_pass_and_collect_findings(self, surfaces):
        report = surfaces
        assert [c.name for c in report.checks if not c.passed] == []
        labels = {case for case, _ in report.findings}
        assert {"cosh14/14", "ex2/23", "cosh56/56"} <= labels
        eps14 = [f for case, f in report.findings if case == "cosh14/14" and f.quantity == "eps"]
        assert eps14 and not eps14[0].matches

    @pytest.mark.parametrize("label", ["ex2/23", "cosh56/56", "ex1/14"])
    def test_printed_k_defects_are_expected_failures(self, surfaces, label):
        check = _check(surfaces, f"{label} printed K differs from the oracle (printed-formula defect)")
        assert check.expected_failure
        assert check.passed
        assert check.residual > CURVATURE_MATCH_TOL
        assert check.status == "XFAIL"
        assert f"XFAIL  {label} printed K differs" in surfaces.render()

    @pytest.mark.parametrize("label", ["cosh14/14", "lin14/14", "ex3/56"])
    def test_printed_k_matches(self, surfaces, label):
        check = _check(surfaces, f"{label} some printed K variant matches the oracle")
        assert not check.expected_failure
        assert check.status == "PASS"
        assert check.residual <= CURVATURE_MATCH_TOL

    def test_every_surface_case_has_a_printed_k_check(self, surfaces):
        printed = [c.name for c in surfaces.checks if " printed K " in c.name]
        assert len(printed) == 6

    def test_group_checks_use_absolute_thresholds(self, runner):
        report = runner.run_verification("groups")
        for gid in GeneratorId:
            assert _check(report, f"{gid.label} pseudo-orthogonal").threshold == PSEUDO_ORTHOGONAL_TOL
            assert _check(report, f"{gid.label} inverse").threshold == 1e-12

    @pytest.mark.parametrize("gid", list(GeneratorId))
    def test_absolute_residuals_hold_at_the_range_edge(self, gid):
        M = one_param_matrix(gid, 3.0).matrix
        back = M @ one_param_matrix(gid, -3.0).matrix
        assert float(np.max(np.abs(back - np.eye(4)))) <= 1e-12

    def test_same_seed_same_report(self):
        first = VerificationRunner(seed=7).run_verification("groups").render()
        second = VerificationRunner(seed=7).run_verification("groups").render()
        assert first == second

    def test_unknown_suite(self, runner):
        with pytest.raises(ValueError):
            runner.run_verification("geometry")
        assert "all" in SUITES


class TestReport:
    def test_failed_check_sets_exit_code(self):
        report = VerificationReport()
        report.add("small", 1e-13, 1e-12)
        assert report.passed
        report.add_flag("broken", False)
        assert not report.passed and report.exit_code == 1

    def test_render(self):
        report = VerificationReport()
        report.add("small", 1e-13, 1e-12)
        report.findings.append(("lin14/14", Finding("K", "statement", 0.5, False, "note")))
        text = report.render()
        assert text.startswith("PASS  small")
        assert "lin14/14: K/statement differs" in text
        assert text.endswith("1/1 checks passed")

    def test_expected_failure(self):
        report = VerificationReport()
        known = report.add("known defect", 0.5, 1e-6, expected_failure=True)
        assert known.passed and known.status == "XFAIL"
        assert report.exit_code == 0
        assert report.render().startswith("XFAIL  known defect")

    def test_unexpected_pass_fails_the_run(self):
        report = VerificationReport()
        fixed = report.add("known defect", 1e-9, 1e-6, expected_failure=True)
        assert not fixed.passed and fixed.status == "XPASS"
        assert report.exit_code == 1
