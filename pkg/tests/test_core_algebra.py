"""
Tests for the signature (-,-,+,+) algebra
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core_algebra import (CausalCharacter, Quadric, QuadricType, as_vec4, causal_character,
                          causal_character_tol, causal_sign, cross3, expm, inner_product,
                          is_pseudo_orthogonal, metric_matrix, norm, quadric_residual)
from errors import FailedConvergence, NonFiniteInput
from killing_fields import GeneratorId, generator
from rotation_groups import one_param_matrix

_TOL = 1e-12

_coord = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
vectors = st.lists(_coord, min_size=4, max_size=4).map(np.array)

E1, E2, E3, E4 = np.eye(4)


class TestInnerProduct:
    def test_basis_values(self):
        assert inner_product(E1, E1) == -1.0
        assert inner_product(E3, E4) == 0.0
        assert inner_product([1, 0, 1, 0], [1, 0, 1, 0]) == 0.0

    @given(vectors, vectors)
    def test_symmetric(self, u, v):
        assert inner_product(u, v) == pytest.approx(inner_product(v, u), abs=_TOL)

    @given(vectors, vectors, vectors, _coord, _coord)
    def test_bilinear(self, u, v, w, a, b):
        lhs = inner_product(a * u + b * w, v)
        rhs = a * inner_product(u, v) + b * inner_product(w, v)
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)

    def test_rejects_non_finite(self):
        with pytest.raises(NonFiniteInput):
            inner_product([math.nan, 0, 0, 0], E1)
        with pytest.raises(NonFiniteInput):
            as_vec4([1, 2, 3])

    def test_metric_matrix_is_involution(self):
        G = metric_matrix()
        assert np.array_equal(G, G.T)
        assert np.array_equal(G @ G, np.eye(4))
        with pytest.raises(ValueError):
            G[0, 0] = 5.0


class TestCausalCharacter:
    @pytest.mark.parametrize("v, expected", [
        ((0, 0, 1, 0), CausalCharacter.SPACE_LIKE),
        ((1, 0, 0, 0), CausalCharacter.TIME_LIKE),
        ((1, 0, 1, 0), CausalCharacter.NULL),
        ((0, 0, 0, 0), CausalCharacter.SPACE_LIKE),
    ])
    def test_examples(self, v, expected):
        assert causal_character(v) is expected

    def test_sign(self):
        assert causal_sign(E3) == 1
        assert causal_sign(E2) == -1
        assert causal_sign([0, 1, 0, 1]) == 0

    def test_tolerance_band(self):
        nearly_null = [1.0, 0.0, 1.0 + 1e-14, 0.0]
        assert causal_character(nearly_null) is CausalCharacter.SPACE_LIKE
        assert causal_character_tol(nearly_null, 1e-12) is CausalCharacter.NULL
        assert causal_character_tol(E2, 1e-12) is CausalCharacter.TIME_LIKE
        assert causal_character_tol(np.zeros(4), 1e-12) is CausalCharacter.SPACE_LIKE

    def test_default_tolerance_band(self):
        assert causal_character_tol([1.0, 0.0, 1.0 + 1e-14, 0.0]) is CausalCharacter.NULL
        assert causal_character_tol([1.0, 0.0, 1.0 + 1e-6, 0.0]) is CausalCharacter.SPACE_LIKE


def test_norm_examples():
    assert norm([0, 0, 3, 4]) == 5.0
    assert norm([2, 0, 0, 0]) == 2.0
    assert norm([1, 0, 1, 0]) == 0.0


class TestCross3:
    def test_basis(self):
        assert np.array_equal(cross3(E2, E3, E4), np.array([-1.0, 0.0, 0.0, 0.0]))

    @given(vectors, vectors)
    def test_repeated_argument_vanishes(self, x, z):
        assert np.allclose(cross3(x, x, z), 0.0, atol=_TOL)

    def test_orthogonal_example(self):
        x, y, z = [1, 2, 0, 1], [0, 1, 1, 0], [1, 0, 0, 1]
        c = cross3(x, y, z)
        for w in (x, y, z):
            assert inner_product(c, w) == pytest.approx(0.0, abs=_TOL)

    @given(vectors, vectors, vectors)
    def test_alternating(self, x, y, z):
        c = cross3(x, y, z)
        assert np.allclose(c, -cross3(y, x, z), atol=1e-9)
        assert np.allclose(c, -cross3(x, z, y), atol=1e-9)

    @given(vectors, vectors, vectors)
    def test_orthogonal_to_arguments(self, x, y, z):
        scale = max(1.0, float(np.max(np.abs([x, y, z]))))
        c = cross3(x, y, z)
        for w in (x, y, z):
            assert abs(inner_product(c, w)) <= 1e-9 * scale ** 3


class TestPseudoOrthogonal:
    def test_identity(self):
        assert is_pseudo_orthogonal(np.eye(4), 1e-12) == (True, 0.0)

    def test_hyperbolic_rotation(self):
        ok, residual = is_pseudo_orthogonal(one_param_matrix(GeneratorId.OMEGA1, 0.7).matrix, 1e-12)
        assert ok
        assert residual <= 1e-12

    def test_scaling_is_not_an_isometry(self):
        ok, residual = is_pseudo_orthogonal(np.diag([2.0, 1.0, 1.0, 1.0]), 1.0)
        assert not ok
        assert residual == pytest.approx(3.0)

    @pytest.mark.parametrize("gid, param", [(GeneratorId.OMEGA4, -2.5), (GeneratorId.OMEGA6, 2.9)])
    def test_default_tolerance(self, gid, param):
        ok, residual = is_pseudo_orthogonal(one_param_matrix(gid, param).matrix)
        assert ok
        assert residual <= 1e-12


class TestExpm:
    def test_zero_matrix(self):
        assert np.array_equal(expm(np.zeros((4, 4))), np.eye(4))

    def test_hyperbolic_entry(self):
        M = expm(0.5 * generator(GeneratorId.OMEGA1).matrix, 1e-14)
        assert M[0, 0] == pytest.approx(1.1276259652063807, abs=1e-12)
        assert M[0, 2] == pytest.approx(math.sinh(0.5), abs=1e-12)

    @given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
    @settings(max_examples=50)
    def test_commuting_sum_splits(self, p, q):
        A = p * generator(GeneratorId.OMEGA2).matrix
        B = q * generator(GeneratorId.OMEGA3).matrix
        lhs = expm(A + B, 1e-14)
        rhs = expm(A, 1e-14) @ expm(B, 1e-14)
        assert np.max(np.abs(lhs - rhs)) <= 1e-10 * max(1.0, np.max(np.abs(lhs)))

    @given(st.floats(min_value=-3, max_value=3))
    @settings(max_examples=50)
    def test_killing_generator_gives_isometry(self, p):
        M = expm(p * generator(GeneratorId.OMEGA5).matrix, 1e-14)
        ok, _ = is_pseudo_orthogonal(M, 1e-10)
        assert ok

    def test_divergent_input_raises(self):
        with pytest.raises(FailedConvergence):
            expm(1000.0 * np.eye(4))

    def test_tol_must_be_positive(self):
        with pytest.raises(ValueError):
            expm(np.eye(4), 0.0)


class TestQuadric:
    def test_examples(self):
        sphere = Quadric(QuadricType.PSEUDO_SPHERE)
        assert quadric_residual([0, 0, 1, 0], sphere) == (0.0, None)
        assert quadric_residual([1, 1, 1, 1], sphere) == (-1.0, None)
        assert quadric_residual([1, 0, 0, 0], Quadric(QuadricType.PSEUDO_HYPERBOLIC)) == (0.0, None)

    def test_hyperbolic_sheet(self):
        h3 = Quadric(QuadricType.HYPERBOLIC)
        assert quadric_residual([1, 0, 0, 0], h3) == (0.0, True)
        assert quadric_residual([-1, 0, 0, 0], h3) == (0.0, False)

    @given(st.floats(min_value=0, max_value=2 * math.pi), st.floats(min_value=0.1, max_value=5))
    def test_unit_space_like_offsets_lie_on_sphere(self, phi, r):
        center = np.array([1.0, -2.0, 0.5, 3.0])
        e = np.array([0.0, 0.0, math.cos(phi), math.sin(phi)])
        residual, _ = quadric_residual(center + r * e, Quadric(QuadricType.PSEUDO_SPHERE, center, r))
        assert residual == pytest.approx(0.0, abs=1e-9)

    def test_radius_must_be_positive(self):
        with pytest.raises(ValueError):
            Quadric(QuadricType.PSEUDO_SPHERE, radius=0.0)
