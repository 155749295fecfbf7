"""Tests for discrete Lagrangians, Legendre transforms and Hamiltonian flows."""

import math

import numpy as np
import pytest

from src.dynamics import classify_point
from src.groupoid import PairGroupoid
from src.lagrangian import (
    DiscreteLagrangian, HamiltonianSystem, LegendreValue, Side, canonical_symplectic,
    flow_lagrangian_set, flow_map,
    free_particle, hamiltonian_flow, midpoint_oscillator, singular_lagrangian,
)
from src.nonholonomic import SleighParams, sleigh_lagrangian
from src.utils.errors import NonFiniteError, NotComposableError, SingularError, UnboundVariableError

OSCILLATOR = "(q1 - q0)^2/(2*h) - (h/8)*(q0 + q1)^2"


def exact_oscillator_lagrangian(t: float) -> DiscreteLagrangian:
    """Generating function of the time-t flow of H = (p^2 + q^2)/2."""
    c, s = math.cos(t), math.sin(t)

    def L(g):
        q0, q1 = g
        return ((q0 * q0 + q1 * q1) * c - 2.0 * q0 * q1) / (2.0 * s)
    return DiscreteLagrangian(PairGroupoid(1), L, name="exact", step=t)


class TestMidpointOscillator:
    def setup_method(self):
        self.h = 0.1
        self.L = midpoint_oscillator(self.h)

    def test_successor_formula(self):
        g = np.array([0.0, 0.1])
        ratio = (1.0 - self.h ** 2 / 4.0) / (1.0 + self.h ** 2 / 4.0)
        successor = self.L.evolve(g)
        assert successor[0] == pytest.approx(0.1)
        assert successor[1] == pytest.approx(2.0 * 0.1 * ratio, abs=1e-12)
        assert np.max(np.abs(self.L.del_residual(g, successor))) < 1e-10

    def test_plus_legendre(self):
        p = self.L.legendre([0.0, 0.1], Side.PLUS)
        np.testing.assert_allclose(p.base_point, [0.1])
        np.testing.assert_allclose(p.covector, [0.9975])

    def test_legendre_commutes_with_evolution(self):
        g = np.array([0.3, 0.35])
        forward = self.L.legendre(self.L.evolve(g), Side.PLUS)
        mapped = self.L.hamiltonian_evolution(self.L.legendre(g, Side.PLUS))
        np.testing.assert_allclose(forward.coordinates, mapped.coordinates, atol=1e-10)

    def test_translation_derivative_matches_legendre(self):
        g = [0.2, -0.4]
        for side in (Side.PLUS, Side.MINUS):
            np.testing.assert_allclose(self.L.translation_derivative(g, side).coordinates,
                                       self.L.legendre(g, side).coordinates, atol=1e-12)

    def test_expression_form_matches_catalog(self):
        L = DiscreteLagrangian.from_expression(OSCILLATOR, PairGroupoid(1), parameters={'h': self.h})
        g = [0.0, 0.1]
        np.testing.assert_allclose(L.evolve(g), self.L.evolve(g), atol=1e-12)
        assert L.step == self.h

    def test_trajectory_and_action(self):
        elements = self.L.trajectory([0.0, 0.1], 20)
        assert len(elements) == 21
        for g, h in zip(elements, elements[1:]):
            assert g[1] == pytest.approx(h[0])
        assert self.L.action_sum(elements) == pytest.approx(sum(float(self.L(g)) for g in elements))

    def test_hamiltonian_map_is_symplectic(self, rng):
        def step(z):
            return self.L.hamiltonian_evolution(LegendreValue(z[:1], z[1:])).coordinates

        omega = canonical_symplectic(1)
        eps = 1e-6
        for _ in range(20):
            z = rng.uniform(-2.0, 2.0, size=2)
            J = np.column_stack([(step(z + eps * e) - step(z - eps * e)) / (2 * eps)
                                 for e in np.eye(2)])
            assert np.max(np.abs(J.T @ omega @ J - omega)) < 1e-6

    def test_lagrangian_set_points_are_integrable(self, rng):
        S = self.L.build_sl()
        for _ in range(50):
            mu = S.point(rng.uniform(-2.0, 2.0, size=2))
            result = classify_point(S.equation, mu, depth=5, seeds=2, rng=rng)
            assert result.as_tuple() == (5, 5)
            assert not result.inconclusive

    def test_not_composable(self):
        with pytest.raises(NotComposableError):
            self.L.del_residual([0.0, 1.0], [2.0, 3.0])


class TestForwardEvolution:
    @pytest.mark.parametrize('L', [midpoint_oscillator(0.1), free_particle(0.5)], ids=lambda L: L.name)
    def test_legendre_transforms_match_across_steps(self, L, rng):
        for _ in range(100):
            g = rng.uniform(-2.0, 2.0, size=2)
            successor = L.evolve(g)
            np.testing.assert_allclose(L.legendre(g, Side.PLUS).coordinates,
                                       L.legendre(successor, Side.MINUS).coordinates, atol=1e-9)
            assert np.max(np.abs(L.del_residual(g, successor))) < 1e-9


class TestFreeParticle:
    def test_discrete_hamiltonian_map(self):
        h = 0.5
        L = free_particle(h)
        q, p = 1.0, 2.0
        result = L.hamiltonian_evolution(LegendreValue([q], [p]))
        np.testing.assert_allclose(result.base_point, [q + h * h * p])
        np.testing.assert_allclose(result.covector, [p])

    def test_multidimensional_successor_is_constant_velocity(self):
        L = free_particle(0.1, n=2)
        successor = L.evolve([0.0, 0.0, 1.0, 2.0])
        np.testing.assert_allclose(successor, [1.0, 2.0, 2.0, 4.0], atol=1e-10)


class TestLagrangianSet:
    def test_differential_points_are_members(self):
        S = midpoint_oscillator(0.1).build_sl()
        mu = S.point([0.5, 0.7])
        assert S.contains(mu)
        shifted = mu.copy()
        shifted[3] += 0.1
        assert not S.contains(shifted)

    def test_singular_lagrangian_has_no_unique_successor(self):
        with pytest.raises(SingularError):
            singular_lagrangian(0.1).evolve([1.0, 0.0, 0.0, 0.0])

    def test_nonfinite_legendre_value(self):
        with pytest.raises(NonFiniteError):
            LegendreValue([math.nan], [0.0])


class TestTranslationsOnSE2:
    def test_translation_derivative_matches_trivialized_differential(self):
        L = sleigh_lagrangian(SleighParams(m=1.0, a=0.5, b=0.2, J=1.3))
        g = [0.4, 0.8, -0.3]
        for side in (Side.PLUS, Side.MINUS):
            np.testing.assert_allclose(L.translation_derivative(g, side).covector,
                                       L.legendre(g, side).covector, atol=1e-10)


class TestHamiltonianFlow:
    def setup_method(self):
        self.HS = HamiltonianSystem.from_expression("0.5*p^2 + 0.5*q^2")

    def test_rk4_matches_rotation(self):
        t = 1.0
        end = flow_map(self.HS, [1.0, 0.0], t, steps=100)
        np.testing.assert_allclose(end, [math.cos(t), -math.sin(t)], atol=1e-8)

    def test_energy_is_nearly_conserved(self):
        states = hamiltonian_flow(self.HS, [0.3, 0.4], 2.0, steps=200)
        energies = [self.HS.energy(z) for z in states]
        assert max(energies) - min(energies) < 1e-9

    def test_flow_set_is_differential_of_exact_lagrangian(self):
        t = 0.5
        grid = [[1.0, 0.0], [0.2, -0.5], [-1.0, 2.0]]
        rows = flow_lagrangian_set(self.HS, t, grid, steps=200)
        exact = exact_oscillator_lagrangian(t)
        for row in rows:
            np.testing.assert_allclose(row, exact.differential(row[:2]), atol=1e-9)

    def test_zero_time_is_the_identity(self):
        rows = flow_lagrangian_set(self.HS, 0.0, [[1.0, 2.0]])
        np.testing.assert_allclose(rows, [[1.0, 1.0, -2.0, 2.0]])

    def test_multidimensional_variables(self):
        HS = HamiltonianSystem.from_expression("0.5*(p1^2 + p2^2) + k*q1", n=2, parameters={'k': 1.0})
        np.testing.assert_allclose(HS.vector_field([0.0, 0.0, 1.0, 2.0]), [1.0, 2.0, -1.0, 0.0])

    def test_unbound_name(self):
        with pytest.raises(UnboundVariableError):
            HamiltonianSystem.from_expression("q + r")
