"""
Tests for the one-parameter rotation subgroups
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core_algebra import expm, is_pseudo_orthogonal
from killing_fields import GeneratorId, generator
from rotation_groups import (RotationKind, RotationPair, flow_orientation, one_param_derivative,
                             one_param_matrix, pair_generators, two_param_matrix, verify_closed_form)

_params = st.floats(min_value=-3, max_value=3, allow_nan=False)


def _rel(a, b):
    return np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b)))


def test_omega1_display():
    x = 0.4
    expected = np.array([
        [math.cosh(x), 0, math.sinh(x), 0],
        [0, 1, 0, 0],
        [math.sinh(x), 0, math.cosh(x), 0],
        [0, 0, 0, 1],
    ])
    assert np.allclose(one_param_matrix(GeneratorId.OMEGA1, x).matrix, expected, atol=1e-15)


def test_omega5_display_has_plus_sine_first():
    M = one_param_matrix(GeneratorId.OMEGA5, 0.3).matrix
    assert M[0, 1] == pytest.approx(math.sin(0.3))
    assert M[1, 0] == pytest.approx(-math.sin(0.3))
    assert flow_orientation(GeneratorId.OMEGA5) == -1.0
    assert flow_orientation(GeneratorId.OMEGA2) == 1.0


@pytest.mark.parametrize("gid", list(GeneratorId))
def test_identity_at_zero(gid):
    assert np.array_equal(one_param_matrix(gid, 0.0).matrix, np.eye(4))


@pytest.mark.parametrize("gid", list(GeneratorId))
@given(p=_params)
@settings(max_examples=30)
def test_closed_form_matches_series(gid, p):
    assert verify_closed_form(gid, p, 1e-10) <= 1e-10 * max(1.0, math.cosh(p))


@pytest.mark.parametrize("gid", list(GeneratorId))
@given(p=_params, q=_params)
@settings(max_examples=30)
def test_group_law_and_isometry(gid, p, q):
    Mp = one_param_matrix(gid, p).matrix
    assert _rel(Mp @ one_param_matrix(gid, q).matrix, one_param_matrix(gid, p + q).matrix) <= 1e-12
    assert _rel(Mp @ one_param_matrix(gid, -p).matrix, np.eye(4)) <= 1e-12
    _, residual = is_pseudo_orthogonal(Mp, 1.0)
    assert residual <= 1e-12 * max(1.0, np.max(np.abs(Mp))) ** 2


@pytest.mark.parametrize("gid", list(GeneratorId))
def test_derivatives_follow_the_generator(gid):
    p, h = 0.7, 1e-5
    A = flow_orientation(gid) * generator(gid).matrix
    M = one_param_matrix(gid, p).matrix
    fd = (one_param_matrix(gid, p + h).matrix - one_param_matrix(gid, p - h).matrix) / (2 * h)
    assert np.allclose(one_param_derivative(gid, p, 1), fd, atol=1e-8)
    assert np.allclose(one_param_derivative(gid, p, 2), A @ A @ M, atol=1e-14)


def test_non_finite_parameter():
    with pytest.raises(ValueError):
        one_param_matrix(GeneratorId.OMEGA3, math.inf)


def test_verify_needs_positive_tol():
    with pytest.raises(ValueError):
        verify_closed_form(GeneratorId.OMEGA1, 0.5, 0.0)


class TestPairs:
    def test_generators_and_kind(self):
        assert pair_generators(RotationPair.PAIR14) == (GeneratorId.OMEGA1, GeneratorId.OMEGA4)
        assert RotationPair.PAIR23.generators == (GeneratorId.OMEGA2, GeneratorId.OMEGA3)
        assert RotationPair.PAIR56.kind is RotationKind.ELLIPTIC
        assert RotationPair.PAIR14.kind is RotationKind.HYPERBOLIC

    def test_parse(self):
        assert RotationPair.parse("56") is RotationPair.PAIR56
        assert RotationPair.parse(14) is RotationPair.PAIR14
        with pytest.raises(ValueError):
            RotationPair.parse("15")

    @pytest.mark.parametrize("pair", list(RotationPair))
    @given(p=_params, q=_params)
    @settings(max_examples=20)
    def test_two_param_factors_commute(self, pair, p, q):
        gi, gj = pair.generators
        swapped = one_param_matrix(gj, q).matrix @ one_param_matrix(gi, p).matrix
        assert _rel(two_param_matrix(pair, p, q), swapped) <= 1e-12

    @pytest.mark.parametrize("pair", list(RotationPair))
    def test_two_param_is_exponential_of_sum(self, pair):
        gi, gj = pair.generators
        p, q = 0.8, -1.3
        A = p * flow_orientation(gi) * generator(gi).matrix + q * flow_orientation(gj) * generator(gj).matrix
        assert _rel(two_param_matrix(pair, p, q), expm(A, 1e-14)) <= 1e-12
