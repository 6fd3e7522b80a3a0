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

from ..evolution import (
    CFLViolation,
    EvolveConfig,
    FieldBlowUp,
    ForcingProfile,
    InvalidForcing,
    VerletIntegrator,
    evolve,
    forcing_field,
    rhs,
    step,
)
from ..functionals import energy
from ..grid import Field, Grid, State, l2_norm, linf_norm
from ..kink import ParamWindow, SolitonParams, soliton_pair
from ..symplectic import decompose


def vacuum(g):
    return State(g.zeros(), g.zeros())


class ForcingProfileTests(TestCase):
    def test_zero(self):
        g = Grid.symmetric(10, 0.5)
        f = forcing_field(ForcingProfile("zero", 3.0, 1.0, 0.1), g)
        self.assertEqual(0.0, linf_norm(f))
        self.assertTrue(ForcingProfile("gaussian", 1.0, 1.0, 0.0).is_zero)

    def test_gaussian(self):
        fp = ForcingProfile("gaussian", 1.0, 1.0, 0.1)
        self.assertAlmostEqual(0.01, float(fp.force(0.0)), places=15)
        self.assertAlmostEqual(0.01 * math.exp(-1.0), float(fp.force(10.0)), places=15)

    def test_sech2(self):
        fp = ForcingProfile("sech2", 2.0, 1.5, 0.2)
        self.assertAlmostEqual(2.0, float(fp.f(0.0)), places=14)
        self.assertAlmostEqual(2.0 / math.cosh(1.0) ** 2, float(fp.f(1.5)), places=14)
        self.assertEqual(0.0, float(fp.f(1e4)))

    def test_derivatives(self):
        y = np.linspace(-4, 4, 41)
        h = 1e-6
        for family in ("gaussian", "sech2"):
            fp = ForcingProfile(family, 1.3, 0.8, 0.1)
            np.testing.assert_allclose(
                fp.df(y), (fp.f(y + h) - fp.f(y - h)) / (2 * h), atol=1e-8
            )
            x = 10 * y
            np.testing.assert_allclose(
                fp.force_gradient(x),
                (fp.force(x + h) - fp.force(x - h)) / (2 * h),
                atol=1e-10,
            )

    def test_invalid(self):
        self.assertRaises(InvalidForcing, ForcingProfile, "cosine")
        self.assertRaises(InvalidForcing, ForcingProfile, "gaussian", 1.0, 0.0)
        self.assertRaises(InvalidForcing, ForcingProfile, "gaussian", 1.0, 1.0, -0.1)
        self.assertRaises(InvalidForcing, ForcingProfile, "gaussian", float("inf"))

    def test_with_epsilon(self):
        fp = ForcingProfile("sech2", 2.0, 3.0, 0.1).with_epsilon(0.05)
        self.assertEqual(("sech2", 2.0, 3.0, 0.05), (fp.family, fp.amplitude, fp.width, fp.epsilon))


class EvolveConfigTests(TestCase):
    def test_invalid(self):
        self.assertRaises(ValueError, EvolveConfig, 0.0, 1.0)
        self.assertRaises(ValueError, EvolveConfig, 0.01, -1.0)
        self.assertRaises(ValueError, EvolveConfig, 0.01, 1.0, 0)
        self.assertRaises(ValueError, EvolveConfig, 0.01, 1.0, 1, 1.5)

    def test_num_steps(self):
        cfg = EvolveConfig(0.01, 1.0)
        self.assertEqual(100, cfg.num_steps)
        self.assertEqual(0.0, cfg.final_step)

    def test_final_step(self):
        cfg = EvolveConfig(0.3, 1.0)
        self.assertEqual(3, cfg.num_steps)
        self.assertAlmostEqual(0.1, cfg.final_step, places=12)
        cfg = EvolveConfig(0.01, 1.0 / 0.03)
        self.assertEqual(3333, cfg.num_steps)
        self.assertAlmostEqual(1.0 / 3.0 * 0.01, cfg.final_step, places=10)

    def test_cfl(self):
        g = Grid.symmetric(10, 0.02)
        EvolveConfig(0.01, 1.0).check_cfl(g)
        e = self.assertRaises(CFLViolation, EvolveConfig(0.02, 1.0).check_cfl, g)
        self.assertEqual(0.02, e.dt)


class RhsTests(TestCase):
    def test_vacuum(self):
        g = Grid.symmetric(10, 0.1)
        ds = rhs(vacuum(g), g.zeros())
        self.assertEqual(0.0, linf_norm(ds.theta))
        self.assertEqual(0.0, linf_norm(ds.psi))

    def test_constant_pi(self):
        g = Grid.symmetric(10, 0.1)
        ds = rhs(State(g.constant(math.pi), g.zeros()), g.zeros())
        self.assertAlmostEqual(0.0, linf_norm(ds.psi), places=12)

    def test_static_kink(self):
        g = Grid.symmetric(40, 0.01)
        ds = rhs(soliton_pair(SolitonParams(0.0, 0.0), g), g.zeros())
        self.assertLessEqual(l2_norm(ds.psi), 2e-4)

    def test_ends_held(self):
        g = Grid.symmetric(10, 0.1)
        s = State(g.sample(np.cos), g.constant(1.0))
        ds = rhs(s, g.constant(0.5))
        self.assertEqual((0.0, 0.0), (ds.theta.values[0], ds.theta.values[-1]))
        self.assertEqual((0.0, 0.0), (ds.psi.values[0], ds.psi.values[-1]))


class StepTests(TestCase):
    def test_vacuum(self):
        g = Grid.symmetric(10, 0.1)
        s = step(vacuum(g), g.zeros(), 0.05)
        self.assertEqual(0.0, linf_norm(s.theta))
        self.assertEqual(0.0, linf_norm(s.psi))

    def test_static_kink(self):
        g = Grid.symmetric(40, 0.01)
        s0 = soliton_pair(SolitonParams(0.0, 0.0), g)
        s1 = step(s0, g.zeros(), 0.005)
        self.assertLessEqual(linf_norm(s1.theta - s0.theta), 1e-8)

    def test_ends_held(self):
        g = Grid.symmetric(20, 0.05)
        s0 = soliton_pair(SolitonParams(0.0, 0.4), g)
        force = forcing_field(ForcingProfile("gaussian", 1.0, 1.0, 0.2), g)
        s1 = step(s0, force, 0.02)
        s2 = step(s1, force, 0.02)
        for s in (s1, s2):
            self.assertEqual(0.0, s.theta.values[0])
            self.assertEqual(2.0 * math.pi, s.theta.values[-1])
            self.assertEqual(0.0, s.psi.values[0])
            self.assertEqual(0.0, s.psi.values[-1])

    def test_short_domain_ends_pinned(self):
        # K(-8) is about 1.3e-3, so the input ends are visibly off the vacua.
        g = Grid.symmetric(8, 0.05)
        s0 = soliton_pair(SolitonParams(0.0, 0.0), g)
        self.assertGreater(s0.theta.values[0], 1e-3)
        s1 = step(s0, g.zeros(), 0.02)
        self.assertEqual(0.0, s1.theta.values[0])
        self.assertEqual(2.0 * math.pi, s1.theta.values[-1])

    def test_antikink_ends(self):
        g = Grid.symmetric(20, 0.05)
        s0 = soliton_pair(SolitonParams(0.0, 0.0), g)
        flipped = State(2.0 * math.pi - s0.theta, s0.psi)
        s1 = step(flipped, g.zeros(), 0.02)
        self.assertEqual(2.0 * math.pi, s1.theta.values[0])
        self.assertEqual(0.0, s1.theta.values[-1])

    def test_time_reversible(self):
        g = Grid.symmetric(20, 0.05)
        force = forcing_field(ForcingProfile("gaussian", 1.0, 1.0, 0.2), g)
        s0 = soliton_pair(SolitonParams(0.0, 0.3), g)
        forward = VerletIntegrator(s0, force, 0.02)
        forward.integrate(50)
        s1 = forward.state()
        backward = VerletIntegrator(State(s1.theta, -s1.psi), force, 0.02)
        backward.integrate(50)
        s2 = backward.state()
        self.assertLessEqual(linf_norm(s2.theta - s0.theta), 1e-9)
        self.assertLessEqual(linf_norm(-s2.psi - s0.psi), 1e-9)

    def test_blow_up(self):
        g = Grid.symmetric(10, 0.1)
        s = State(g.constant(13.0), g.zeros())
        e = self.assertRaises(FieldBlowUp, step, s, g.zeros(), 0.05)
        self.assertEqual(1, e.step)

    def test_force_on_other_grid(self):
        g = Grid.symmetric(10, 0.1)
        self.assertRaises(
            ValueError, VerletIntegrator, vacuum(g), Grid.symmetric(10, 0.2).zeros(), 0.01
        )

    def test_finish(self):
        g = Grid.symmetric(10, 0.1)
        integrator = VerletIntegrator(vacuum(g), g.zeros(), 0.05)
        integrator.integrate(4)
        self.assertRaises(ValueError, integrator.finish, 0.05)
        integrator.finish(0.02)
        self.assertAlmostEqual(0.22, integrator.time, places=12)
        self.assertRaises(ValueError, integrator.integrate, 1)


class EvolveTests(TestCase):
    def test_vacuum(self):
        g = Grid.symmetric(10, 0.1)
        s = evolve(vacuum(g), ForcingProfile("zero"), EvolveConfig(0.05, 1.0))
        self.assertEqual(0.0, linf_norm(s.theta))

    def test_observer_times(self):
        g = Grid.symmetric(10, 0.1)
        seen = []
        evolve(
            vacuum(g),
            ForcingProfile("zero"),
            EvolveConfig(0.05, 1.0, diag_stride=5),
            lambda t, s: seen.append(t),
        )
        self.assertEqual(5, len(seen))
        self.assertEqual(0.0, seen[0])
        self.assertAlmostEqual(1.0, seen[-1], places=12)

    def test_observes_end_off_stride(self):
        g = Grid.symmetric(10, 0.1)
        seen = []
        evolve(
            vacuum(g),
            ForcingProfile("zero"),
            EvolveConfig(0.05, 1.0, diag_stride=3),
            lambda t, s: seen.append(t),
        )
        # 20 steps: observed after 3, 6, .., 18 and once more at the end.
        self.assertEqual(8, len(seen))
        self.assertAlmostEqual(0.9, seen[-2], places=12)
        self.assertAlmostEqual(1.0, seen[-1], places=12)

    def test_lands_on_t_end(self):
        g = Grid.symmetric(30, 0.02)
        s0 = soliton_pair(SolitonParams(0.0, 0.3), g)
        seen = []
        s = evolve(
            s0,
            ForcingProfile("zero"),
            EvolveConfig(0.01, 1.005, diag_stride=50),
            lambda t, s: seen.append(t),
        )
        self.assertEqual([0.0, 0.5, 1.0, 1.005], [round(t, 12) for t in seen])
        reference = soliton_pair(SolitonParams(0.3 * 1.005, 0.3), g)
        self.assertLessEqual(linf_norm(s.theta - reference.theta), 1e-3)

    def test_observer_exception_ends_run(self):
        class Stop(Exception):
            pass

        def observer(t, s):
            if t > 0.2:
                raise Stop()

        g = Grid.symmetric(10, 0.1)
        self.assertRaises(
            Stop,
            evolve,
            vacuum(g),
            ForcingProfile("zero"),
            EvolveConfig(0.05, 1.0),
            observer,
        )

    def test_cfl_violation(self):
        g = Grid.symmetric(10, 0.1)
        self.assertRaises(
            CFLViolation, evolve, vacuum(g), ForcingProfile("zero"), EvolveConfig(0.1, 1.0)
        )

    def test_free_kink_moves(self):
        g = Grid.symmetric(30, 0.02)
        p = SolitonParams(0.0, 0.3)
        s0 = soliton_pair(p, g)
        s = evolve(s0, ForcingProfile("zero"), EvolveConfig(0.01, 2.0))
        d = decompose(s, SolitonParams(0.6, 0.3), ParamWindow(0.5))
        self.assertAlmostEqual(0.6, d.params.xi, delta=1e-3)
        self.assertAlmostEqual(0.3, d.params.u, delta=1e-3)
        self.assertAlmostEqual(energy(s0), energy(s), delta=1e-4 * energy(s0))

    def test_translation_equivariant(self):
        g = Grid.symmetric(30, 0.02)
        k = 20
        a = soliton_pair(SolitonParams(0.0, 0.3), g)
        b = soliton_pair(SolitonParams(k * g.dx, 0.3), g)
        cfg = EvolveConfig(0.01, 1.0)
        a = evolve(a, ForcingProfile("zero"), cfg)
        b = evolve(b, ForcingProfile("zero"), cfg)
        np.testing.assert_allclose(b.theta.values[k:], a.theta.values[:-k], atol=1e-9)
        np.testing.assert_allclose(b.psi.values[k:], a.psi.values[:-k], atol=1e-9)

    def test_state_unchanged(self):
        g = Grid.symmetric(10, 0.1)
        s0 = State(g.sample(lambda x: np.exp(-x * x)), g.zeros())
        before = s0.theta.values.copy()
        evolve(s0, ForcingProfile("zero"), EvolveConfig(0.05, 0.5))
        np.testing.assert_array_equal(before, s0.theta.values)
        self.assertIsInstance(s0.theta, Field)
