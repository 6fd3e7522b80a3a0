#!/usr/bin/python3
# Copyright (C) 2026 The kinklab developers
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA 02110-1301 USA

import math

import numpy as np
from testtools import TestCase

from ..evolution import ForcingProfile
from ..functionals import (
    e_functional,
    energy,
    functional_report,
    hamiltonian_eps,
    lyapunov,
    lyapunov_rate,
    lyapunov_rate_terms,
    momentum,
    n_check,
    project_n2,
    remainder,
    restricted_hamiltonian,
    restricted_hamiltonian_gradient,
    transversal_velocity,
)
from ..grid import Field, Grid, State, h1_norm, l2_norm, linf_norm
from ..kink import (
    ParamWindow,
    SolitonParams,
    default_kink_constants,
    gamma,
    soliton_pair,
    tangent_fields,
)
from ..symplectic import (
    Decomposition,
    decompose,
    omega_orthogonalize,
    orthogonality_residual,
)


def gaussian(g, amplitude, centre=0.0, width=1.0):
    return g.sample(lambda x: amplitude * np.exp(-(((x - centre) / width) ** 2)))


def transversal(p, v, w):
    return Decomposition(p, v, w, 0, 0.0)


class EnergyTests(TestCase):
    def test_vacuum(self):
        g = Grid.symmetric(10, 0.1)
        self.assertEqual(0.0, energy(State(g.zeros(), g.zeros())))

    def test_two_pi_vacuum(self):
        g = Grid.symmetric(10, 0.1)
        self.assertAlmostEqual(0.0, energy(State(g.constant(2 * math.pi), g.zeros())), places=12)

    def test_static_kink(self):
        g = Grid.symmetric(40, 0.001)
        self.assertAlmostEqual(8.0, energy(soliton_pair(SolitonParams(0.0, 0.0), g)), delta=1e-6)

    def test_boosted_kink(self):
        g = Grid.symmetric(40, 0.001)
        self.assertAlmostEqual(10.0, energy(soliton_pair(SolitonParams(0.0, 0.6), g)), delta=1e-5)


class MomentumTests(TestCase):
    def test_static(self):
        g = Grid.symmetric(10, 0.1)
        self.assertEqual(0.0, momentum(State(g.sample(np.sin), g.zeros())))

    def test_boosted_kink(self):
        g = Grid.symmetric(40, 0.001)
        self.assertAlmostEqual(-6.0, momentum(soliton_pair(SolitonParams(0.0, 0.6), g)), delta=1e-5)
        self.assertAlmostEqual(6.0, momentum(soliton_pair(SolitonParams(0.0, -0.6), g)), delta=1e-5)


class HamiltonianTests(TestCase):
    def test_unforced(self):
        g = Grid.symmetric(20, 0.01)
        s = soliton_pair(SolitonParams(0.3, 0.2), g)
        self.assertEqual(energy(s), hamiltonian_eps(s, ForcingProfile("gaussian", 1.0, 1.0, 0.0)))

    def test_vacuum(self):
        g = Grid.symmetric(20, 0.1)
        s = State(g.zeros(), g.zeros())
        self.assertEqual(0.0, hamiltonian_eps(s, ForcingProfile("gaussian", 1.0, 1.0, 0.1)))

    def test_matches_restricted(self):
        g = Grid.symmetric(60, 0.001)
        fp = ForcingProfile("gaussian", 1.0, 1.0, 0.1)
        p = SolitonParams(0.0, 0.0)
        self.assertAlmostEqual(
            restricted_hamiltonian(p, fp, default_kink_constants()),
            hamiltonian_eps(soliton_pair(p, g), fp),
            delta=2e-6,
        )


class RestrictedHamiltonianTests(TestCase):
    def test_unforced(self):
        kc = default_kink_constants()
        p = SolitonParams(2.0, 0.6)
        fp = ForcingProfile("zero")
        self.assertEqual(kc.m * gamma(0.6), restricted_hamiltonian(p, fp, kc))
        self.assertEqual(
            (0.0, kc.m * 0.6 * gamma(0.6) ** 3), restricted_hamiltonian_gradient(p, fp, kc)
        )

    def test_gradient(self):
        kc = default_kink_constants()
        h = 1e-4
        for fp in (
            ForcingProfile("gaussian", 1.0, 1.0, 0.2),
            ForcingProfile("sech2", -0.7, 2.0, 0.3),
        ):
            p = SolitonParams(1.5, 0.3)
            d_xi, d_u = restricted_hamiltonian_gradient(p, fp, kc)
            fd_xi = (
                restricted_hamiltonian(SolitonParams(p.xi + h, p.u), fp, kc)
                - restricted_hamiltonian(SolitonParams(p.xi - h, p.u), fp, kc)
            ) / (2 * h)
            fd_u = (
                restricted_hamiltonian(SolitonParams(p.xi, p.u + h), fp, kc)
                - restricted_hamiltonian(SolitonParams(p.xi, p.u - h), fp, kc)
            ) / (2 * h)
            self.assertAlmostEqual(fd_xi, d_xi, delta=1e-6)
            self.assertAlmostEqual(fd_u, d_u, delta=1e-6)


class LyapunovTests(TestCase):
    def setUp(self):
        super(LyapunovTests, self).setUp()
        self.grid = Grid.symmetric(30, 0.01)

    def test_zero(self):
        d = transversal(SolitonParams(0.0, 0.3), self.grid.zeros(), self.grid.zeros())
        self.assertEqual(0.0, lyapunov(d))
        self.assertEqual(0.0, e_functional(d))

    def test_far_bump(self):
        v = gaussian(self.grid, 1e-3, centre=20.0)
        d = transversal(SolitonParams(0.0, 0.0), v, self.grid.zeros())
        expected = 0.5 * h1_norm(v) ** 2
        self.assertAlmostEqual(expected, lyapunov(d), delta=0.05 * expected)

    def test_completed_square(self):
        rng = np.random.RandomState(11)
        envelope = np.exp(-self.grid.x ** 2 / 8)
        v = Field(self.grid, envelope * rng.normal(size=self.grid.n) * 1e-3)
        w = Field(self.grid, envelope * rng.normal(size=self.grid.n) * 1e-3)
        d = transversal(SolitonParams(0.4, 0.5), v, w)
        self.assertAlmostEqual(lyapunov(d), e_functional(d), delta=1e-12)

    def test_zero_mode(self):
        # The translation mode costs nothing.
        p = SolitonParams(0.0, 0.0)
        t = tangent_fields(p, self.grid)
        d = transversal(p, 1e-3 * t.xi_theta, self.grid.zeros())
        self.assertAlmostEqual(0.0, lyapunov(d), delta=1e-9)

    def test_bounded_below_on_orthogonal_pairs(self):
        p = SolitonParams(0.2, 0.3)
        rng = np.random.RandomState(3)
        for _ in range(10):
            v = self.grid.zeros()
            w = self.grid.zeros()
            for _ in range(3):
                centre, width = rng.uniform(-5, 5), rng.uniform(0.5, 3)
                v = v + gaussian(self.grid, rng.normal(), centre, width)
                w = w + gaussian(self.grid, rng.normal(), centre, width)
            v, w = omega_orthogonalize(v, w, p)
            norm = h1_norm(v) ** 2 + l2_norm(w) ** 2
            self.assertGreaterEqual(lyapunov(transversal(p, v, w)) / norm, 0.01)


class OrthogonalityCheckTests(TestCase):
    def setUp(self):
        super(OrthogonalityCheckTests, self).setUp()
        self.grid = Grid.symmetric(30, 0.02)

    def test_matches_residual(self):
        p = SolitonParams(0.1, 0.2)
        s = soliton_pair(p, self.grid)
        s = State(s.theta + gaussian(self.grid, 0.01), s.psi)
        d = decompose(s, p, ParamWindow(0.5))
        n1, n2 = n_check(d)
        r1, r2 = orthogonality_residual(s, d.params)
        self.assertAlmostEqual(r1, n1, delta=1e-12)
        self.assertAlmostEqual(r2, n2, delta=1e-12)

    def test_velocity_tangent(self):
        p = SolitonParams(0.0, 0.5)
        t = tangent_fields(p, self.grid)
        n1, _ = n_check(transversal(p, t.u_theta, t.u_psi))
        self.assertAlmostEqual(-gamma(0.5) ** 3 * 8.0, n1, delta=1e-6)

    def test_project_n2(self):
        p = SolitonParams(0.0, 0.4)
        t = tangent_fields(p, self.grid)
        v, w = project_n2(t.xi_theta, t.xi_psi, p)
        self.assertLessEqual(linf_norm(v), 1e-12)
        self.assertLessEqual(linf_norm(w), 1e-12)
        v, w = project_n2(gaussian(self.grid, 0.3, 1.0), gaussian(self.grid, -0.2), p)
        self.assertLessEqual(abs(n_check(transversal(p, v, w))[1]), 1e-10)

    def test_project_n2_keeps_orthogonal_pair(self):
        p = SolitonParams(0.0, 0.4)
        v0, w0 = omega_orthogonalize(
            gaussian(self.grid, 0.3, 1.0), gaussian(self.grid, -0.2), p
        )
        v, w = project_n2(v0, w0, p)
        self.assertLessEqual(linf_norm(v - v0), 1e-9)
        self.assertLessEqual(linf_norm(w - w0), 1e-9)


class RemainderTests(TestCase):
    def setUp(self):
        super(RemainderTests, self).setUp()
        self.grid = Grid.symmetric(20, 0.05)
        self.theta0 = soliton_pair(SolitonParams(0.0, 0.0), self.grid).theta

    def test_zero(self):
        self.assertEqual(0.0, linf_norm(remainder(self.grid.zeros(), self.theta0)))

    def test_cubic_bound(self):
        v = gaussian(self.grid, 0.1, centre=1.0, width=3.0)
        r = remainder(v, self.theta0)
        bound = np.abs(v.values) ** 3 / 6.0
        self.assertTrue(np.all(np.abs(r.values) <= bound + 1e-18))

    def test_cubic_order(self):
        v = gaussian(self.grid, 0.01, centre=1.0, width=3.0)
        ratio = linf_norm(remainder(v, self.theta0)) / linf_norm(
            remainder(0.5 * v, self.theta0)
        )
        self.assertTrue(7.5 <= ratio <= 8.5, ratio)

    def test_grid_mismatch(self):
        self.assertRaises(
            ValueError, remainder, Grid.symmetric(20, 0.1).zeros(), self.theta0
        )


class LyapunovRateTests(TestCase):
    def setUp(self):
        super(LyapunovRateTests, self).setUp()
        self.grid = Grid.symmetric(30, 0.02)

    def test_zero_transversal(self):
        p = SolitonParams(0.0, 0.3)
        d = transversal(p, self.grid.zeros(), self.grid.zeros())
        fp = ForcingProfile("gaussian", 1.0, 1.0, 0.1)
        self.assertEqual(0.0, lyapunov_rate(d, (0.3, 0.0), fp))
        self.assertEqual(
            0.0, linf_norm(transversal_velocity(d, (0.3, 0.0)))
        )

    def test_unforced_cubic(self):
        p = SolitonParams(0.0, 0.3)
        v, w = omega_orthogonalize(
            gaussian(self.grid, 1e-3, 0.5), gaussian(self.grid, -1e-3, -0.5), p
        )
        d = transversal(p, v, w)
        rate = lyapunov_rate(d, (0.3, 0.0), ForcingProfile("zero"))
        self.assertLessEqual(abs(rate), 1e-8)

    def test_terms(self):
        p = SolitonParams(0.0, 0.3)
        v, w = omega_orthogonalize(
            gaussian(self.grid, 1e-2, 0.5), gaussian(self.grid, -1e-2, -0.5), p
        )
        d = transversal(p, v, w)
        fp = ForcingProfile("sech2", 1.0, 1.0, 0.2)
        terms = lyapunov_rate_terms(d, (0.31, -0.01), fp)
        self.assertEqual(
            set(
                [
                    "nonlinear",
                    "velocity_curvature",
                    "centre_drift",
                    "velocity_coupling",
                    "forcing",
                    "forcing_velocity",
                    "forcing_centre",
                    "forcing_gradient",
                    "orthogonality",
                ]
            ),
            set(terms),
        )
        self.assertAlmostEqual(0.0, terms["orthogonality"], delta=1e-12)
        self.assertAlmostEqual(
            math.fsum(terms.values()), lyapunov_rate(d, (0.31, -0.01), fp), delta=1e-15
        )


class FunctionalReportTests(TestCase):
    def test_report(self):
        g = Grid.symmetric(30, 0.02)
        p = SolitonParams(0.0, 0.2)
        s = soliton_pair(p, g)
        d = decompose(s, p, ParamWindow(0.5))
        fp = ForcingProfile("gaussian", 1.0, 1.0, 0.1)
        report = functional_report(s, d, fp)
        self.assertEqual(
            ["E", "H", "H_eps", "L", "Pi", "n2_check"], sorted(report.as_dict())
        )
        self.assertEqual(0.0, report.L)
        self.assertEqual(energy(s), report.H)
        self.assertLess(report.Pi, 0.0)
