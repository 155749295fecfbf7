"""Tests for the pair groupoid, SE(2) and their cotangent groupoids."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from src.groupoid import (
    CotangentPairGroupoid, CotangentSE2, PairGroupoid, SE2Group, compose, cotangent_source_target,
    se2_bracket, se2_exp, se2_from_matrix, se2_hat, se2_log, se2_to_matrix, wrap_angle,
)
from src.utils.errors import DimensionMismatchError, DomainError, NotComposableError


class TestPairGroupoid:
    def setup_method(self):
        self.G = PairGroupoid(2)

    def test_structure_maps(self):
        g = [1.0, 2.0, 3.0, 4.0]
        np.testing.assert_allclose(self.G.source(g), [1.0, 2.0])
        np.testing.assert_allclose(self.G.target(g), [3.0, 4.0])
        np.testing.assert_allclose(self.G.inverse(g), [3.0, 4.0, 1.0, 2.0])
        np.testing.assert_allclose(self.G.identity([5.0, 6.0]), [5.0, 6.0, 5.0, 6.0])

    def test_composition(self):
        g = [1.0, 2.0, 3.0, 4.0]
        h = [3.0, 4.0, 7.0, 8.0]
        np.testing.assert_allclose(compose(self.G, g, h), [1.0, 2.0, 7.0, 8.0])

    def test_not_composable(self):
        with pytest.raises(NotComposableError) as info:
            compose(self.G, [1.0, 2.0, 3.0, 4.0], [0.0, 4.0, 7.0, 8.0])
        assert info.value.mismatch == pytest.approx(3.0)

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatchError):
            compose(self.G, [1.0, 2.0, 3.0], [3.0, 4.0, 7.0, 8.0])

    def test_identity_and_inverse_laws(self, rng):
        g = self.G.random_element(rng)
        np.testing.assert_allclose(compose(self.G, self.G.identity(self.G.source(g)), g), g)
        np.testing.assert_allclose(compose(self.G, g, self.G.inverse(g)),
                                   self.G.identity(self.G.source(g)))


class TestCotangentPairGroupoid:
    def setup_method(self):
        self.CT = CotangentPairGroupoid(1)

    def test_source_and_target(self):
        alpha, beta = cotangent_source_target(self.CT, [1.0, 2.0, 3.0, 4.0])
        np.testing.assert_allclose(alpha, [1.0, -3.0])
        np.testing.assert_allclose(beta, [2.0, 4.0])

    def test_composition_cancels_middle_covector(self):
        mu = [1.0, 2.0, 3.0, 4.0]
        nu = [2.0, 5.0, -4.0, 6.0]
        np.testing.assert_allclose(compose(self.CT, mu, nu), [1.0, 5.0, 3.0, 6.0])
        with pytest.raises(NotComposableError):
            compose(self.CT, mu, [2.0, 5.0, 4.0, 6.0])

    def test_identity_maps_to_base_point(self):
        e = self.CT.identity([0.5, 1.5])
        np.testing.assert_allclose(self.CT.source(e), [0.5, 1.5])
        np.testing.assert_allclose(self.CT.target(e), [0.5, 1.5])

    def test_affine_charts_match_maps(self, rng):
        mu = self.CT.random_element(rng)
        np.testing.assert_allclose(self.CT.source_map(mu), self.CT.source(mu))
        np.testing.assert_allclose(self.CT.target_map(mu), self.CT.target(mu))


class TestSE2:
    def setup_method(self):
        self.G = SE2Group()

    def test_wrap_angle(self):
        assert wrap_angle(math.pi) == pytest.approx(math.pi)
        assert wrap_angle(-math.pi) == pytest.approx(math.pi)
        assert wrap_angle(2.5 * math.pi) == pytest.approx(0.5 * math.pi)
        assert wrap_angle(0.3) == 0.3

    def test_associativity(self, rng):
        g, h, k = (self.G.random_element(rng) for _ in range(3))
        left = self.G.multiply(self.G.multiply(g, h), k)
        right = self.G.multiply(g, self.G.multiply(h, k))
        np.testing.assert_allclose(left, right, atol=1e-12)

    def test_inverse(self, rng):
        g = self.G.random_element(rng)
        np.testing.assert_allclose(self.G.multiply(g, self.G.inverse(g)), [0.0, 0.0, 0.0], atol=1e-12)

    def test_matrix_homomorphism(self, rng):
        g, h = self.G.random_element(rng), self.G.random_element(rng)
        np.testing.assert_allclose(se2_to_matrix(self.G.multiply(g, h)),
                                   se2_to_matrix(g) @ se2_to_matrix(h), atol=1e-12)
        np.testing.assert_allclose(se2_from_matrix(se2_to_matrix(g)), g, atol=1e-12)

    def test_exp_matches_matrix_exponential(self):
        for xi in ([0.7, 1.0, -2.0], [-2.0, 0.3, 0.4], [1e-10, 1.0, 2.0]):
            expected = se2_from_matrix(expm(se2_hat(xi)))
            np.testing.assert_allclose(se2_exp(xi), expected, atol=1e-10)

    def test_log_inverts_exp(self):
        xi = [1.2, -0.5, 2.0]
        np.testing.assert_allclose(se2_log(se2_exp(xi)), xi, atol=1e-12)

    def test_log_undefined_at_half_turn(self):
        with pytest.raises(DomainError):
            se2_log([math.pi, 1.0, 0.0])

    def test_bracket(self):
        np.testing.assert_allclose(se2_bracket([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), [0.0, 0.0, 1.0])
        np.testing.assert_allclose(se2_bracket([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]), [0.0, -1.0, 0.0])
        np.testing.assert_allclose(se2_bracket([0.0, 1.0, 0.0], [0.0, 0.0, 1.0]), [0.0, 0.0, 0.0])

    def test_every_pair_composes(self, rng):
        g, h = self.G.random_element(rng), self.G.random_element(rng)
        np.testing.assert_allclose(compose(self.G, g, h), self.G.multiply(g, h))


class TestCotangentSE2:
    def setup_method(self):
        self.CT = CotangentSE2()

    def test_closed_form_source_and_target(self):
        theta, x, y = 0.4, 1.5, -0.7
        p = [0.3, -1.1, 2.0]
        alpha, beta = cotangent_source_target(self.CT, [theta, x, y] + p)
        np.testing.assert_allclose(alpha, [p[0] - y * p[1] + x * p[2], p[1], p[2]], atol=1e-12)
        c, s = math.cos(theta), math.sin(theta)
        np.testing.assert_allclose(beta, [p[0], c * p[1] + s * p[2], -s * p[1] + c * p[2]], atol=1e-12)

    def test_identity(self):
        a = [0.5, -1.0, 2.0]
        e = self.CT.identity(a)
        np.testing.assert_allclose(self.CT.source(e), a, atol=1e-12)
        np.testing.assert_allclose(self.CT.target(e), a, atol=1e-12)

    def test_composition_keeps_outer_source_and_target(self, rng):
        mu = self.CT.random_element(rng)
        nu = self.CT.random_successor(mu, rng)
        product = compose(self.CT, mu, nu)
        np.testing.assert_allclose(self.CT.source(product), self.CT.source(mu), atol=1e-10)
        np.testing.assert_allclose(self.CT.target(product), self.CT.target(nu), atol=1e-10)

    def test_inverse_swaps_source_and_target(self, rng):
        mu = self.CT.random_element(rng)
        inv = self.CT.inverse(mu)
        np.testing.assert_allclose(self.CT.source(inv), self.CT.target(mu), atol=1e-10)
        np.testing.assert_allclose(self.CT.target(inv), self.CT.source(mu), atol=1e-10)

    def test_fiber_chart_round_trip(self, rng):
        a = rng.normal(size=3)
        u = [0.8, 1.0, -0.5]
        mu = self.CT.element_with_source(a, u)
        np.testing.assert_allclose(self.CT.source(mu), a, atol=1e-12)
        np.testing.assert_allclose(self.CT.fiber_coordinates(mu), u)

    def test_mismatched_covectors_do_not_compose(self):
        mu = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0]
        nu = [0.0, 0.0, 0.0, 2.0, 0.0, 0.0]
        with pytest.raises(NotComposableError):
            compose(self.CT, mu, nu)
