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

"""Time integration of the forced sine-Gordon system.

The first order system is

    theta_t = psi
    psi_t = theta_xx - sin(theta) + F(x),    F(x) = eps^2 f(eps x)

on a truncated domain whose two end nodes are held fixed.
"""

import logging
import math
from typing import Callable, Optional

import numpy as np

from .grid import Field, Grid, State


logger = logging.getLogger(__name__)


FAMILIES = ("zero", "gaussian", "sech2")

# theta beyond this magnitude is treated as blow-up
THETA_LIMIT = 4.0 * math.pi

Observer = Callable[[float, State], None]


class InvalidForcing(ValueError):
    """Unknown forcing family or invalid forcing parameters."""


class CFLViolation(ValueError):
    """Time step too large for the spatial grid."""

    def __init__(self, dt, dx, guard):
        self.dt = dt
        self.dx = dx
        self.guard = guard
        super(CFLViolation, self).__init__(
            "dt=%g exceeds %g * dx (dx=%g)" % (dt, guard, dx)
        )


class FieldBlowUp(Exception):
    """The fields became non-finite or left the bounded range."""

    def __init__(self, step, t):
        self.step = step
        self.t = t
        super(FieldBlowUp, self).__init__("field blow-up at step %d (t=%g)" % (step, t))


class ForcingProfile(object):
    """A slowly varying forcing eps^2 f(eps x).

    gaussian: f(y) = A exp(-y^2 / width^2)
    sech2: f(y) = A sech(y / width)^2
    zero: f = 0
    """

    def __init__(
        self,
        family: str = "gaussian",
        amplitude: float = 1.0,
        width: float = 1.0,
        epsilon: float = 0.0,
    ) -> None:
        if family not in FAMILIES:
            raise InvalidForcing(
                "unknown forcing family %r (expected one of %s)"
                % (family, ", ".join(FAMILIES))
            )
        if not width > 0:
            raise InvalidForcing("forcing width must be positive, got %r" % (width,))
        if not epsilon >= 0:
            raise InvalidForcing("epsilon must be non-negative, got %r" % (epsilon,))
        if not math.isfinite(amplitude):
            raise InvalidForcing("forcing amplitude must be finite")
        self.family = family
        self.amplitude = float(amplitude)
        self.width = float(width)
        self.epsilon = float(epsilon)

    @property
    def is_zero(self) -> bool:
        return self.family == "zero" or self.amplitude == 0.0 or self.epsilon == 0.0

    def with_epsilon(self, epsilon: float) -> "ForcingProfile":
        return ForcingProfile(self.family, self.amplitude, self.width, epsilon)

    def f(self, y):
        y = np.asarray(y, dtype=float)
        if self.family == "zero":
            return np.zeros_like(y)
        s = y / self.width
        if self.family == "gaussian":
            return self.amplitude * np.exp(-s * s)
        e = np.exp(-2.0 * np.abs(s))
        return self.amplitude * 4.0 * e / ((1.0 + e) * (1.0 + e))

    def df(self, y):
        y = np.asarray(y, dtype=float)
        if self.family == "zero":
            return np.zeros_like(y)
        s = y / self.width
        if self.family == "gaussian":
            return -2.0 * s / self.width * self.f(y)
        return -2.0 / self.width * self.f(y) * np.tanh(s)

    def force(self, x):
        """F(x) = eps^2 f(eps x)."""
        eps = self.epsilon
        return eps * eps * self.f(eps * np.asarray(x, dtype=float))

    def force_gradient(self, x):
        """dF/dx = eps^3 f'(eps x)."""
        eps = self.epsilon
        return eps ** 3 * self.df(eps * np.asarray(x, dtype=float))

    def __repr__(self):
        return "%s(%r, amplitude=%r, width=%r, epsilon=%r)" % (
            type(self).__name__,
            self.family,
            self.amplitude,
            self.width,
            self.epsilon,
        )


class EvolveConfig(object):
    """Time stepping parameters.

    A run takes num_steps full steps of dt and, when t_end is not a
    multiple of dt, one final shorter step of final_step that ends
    exactly on t_end.
    """

    def __init__(
        self,
        dt: float,
        t_end: float,
        diag_stride: int = 1,
        cfl_guard: float = 0.5,
    ) -> None:
        if not dt > 0 or not t_end > 0:
            raise ValueError("dt and t_end must be positive, got %r, %r" % (dt, t_end))
        if int(diag_stride) != diag_stride or diag_stride < 1:
            raise ValueError("diag_stride must be a positive integer")
        if not 0.0 < cfl_guard <= 1.0:
            raise ValueError("cfl_guard must lie in (0, 1], got %r" % (cfl_guard,))
        self.dt = float(dt)
        self.t_end = float(t_end)
        self.diag_stride = int(diag_stride)
        self.cfl_guard = float(cfl_guard)

    @property
    def num_steps(self) -> int:
        return int(math.floor(self.t_end / self.dt + 1e-9))

    @property
    def final_step(self) -> float:
        remainder = self.t_end - self.num_steps * self.dt
        if remainder <= 1e-9 * self.dt:
            return 0.0
        return remainder

    def check_cfl(self, grid: Grid) -> None:
        if self.dt > self.cfl_guard * grid.dx * (1.0 + 1e-12):
            raise CFLViolation(self.dt, grid.dx, self.cfl_guard)

    def __repr__(self):
        return "%s(dt=%r, t_end=%r, diag_stride=%r, cfl_guard=%r)" % (
            type(self).__name__,
            self.dt,
            self.t_end,
            self.diag_stride,
            self.cfl_guard,
        )


def forcing_field(fp: ForcingProfile, g: Grid) -> Field:
    """Sample eps^2 f(eps x) on the grid."""
    return Field(g, fp.force(g.x))


def _acceleration(theta: np.ndarray, force: np.ndarray, dx: float) -> np.ndarray:
    out = np.empty_like(theta)
    out[1:-1] = (
        (theta[:-2] - 2.0 * theta[1:-1] + theta[2:]) / (dx * dx)
        - np.sin(theta[1:-1])
        + force[1:-1]
    )
    out[0] = 0.0
    out[-1] = 0.0
    return out


def rhs(s: State, force: Field) -> State:
    """The time derivative (psi, theta_xx - sin(theta) + F), zero at both ends."""
    g = s.grid
    dtheta = np.array(s.psi.values)
    dtheta[0] = 0.0
    dtheta[-1] = 0.0
    dpsi = _acceleration(s.theta.values, force.values, g.dx)
    return State(Field(g, dtheta), Field(g, dpsi))


def _pin_ends(theta: np.ndarray) -> None:
    # Each end sits on the vacuum 2 pi k nearest to it: 0 and 2 pi for a kink.
    for end in (0, -1):
        theta[end] = 2.0 * math.pi * round(theta[end] / (2.0 * math.pi))


class VerletIntegrator(object):
    """Velocity Verlet stepping of a state.

    The acceleration of the last step is cached, so each step costs one
    evaluation of the right-hand side. Both end nodes are held at the
    nearest multiple of 2 pi with psi = 0 there.
    """

    def __init__(self, state: State, force: Field, dt: float) -> None:
        if state.grid != force.grid:
            raise ValueError("forcing sampled on a different grid")
        self.grid = state.grid
        self.dt = float(dt)
        self._force = force.values
        self._theta = np.array(state.theta.values)
        _pin_ends(self._theta)
        self._psi = np.array(state.psi.values)
        self._psi[0] = 0.0
        self._psi[-1] = 0.0
        self._acceleration = None
        self._final_step = 0.0
        self.steps_taken = 0

    @property
    def time(self) -> float:
        return self.steps_taken * self.dt + self._final_step

    def _advance(self, dt: float) -> None:
        if self._acceleration is None:
            self._acceleration = _acceleration(self._theta, self._force, self.grid.dx)
        self._psi += 0.5 * dt * self._acceleration
        self._theta += dt * self._psi
        self._acceleration = _acceleration(self._theta, self._force, self.grid.dx)
        self._psi += 0.5 * dt * self._acceleration

    def _check_finite(self, step: int) -> None:
        if (
            not np.isfinite(self._psi).all()
            or not np.isfinite(self._theta).all()
            or np.max(np.abs(self._theta)) > THETA_LIMIT
        ):
            raise FieldBlowUp(step, self.time)

    def integrate(self, num_steps: int = 1) -> None:
        if self._final_step:
            raise ValueError("integrator already finished")
        for _ in range(num_steps):
            self._advance(self.dt)
            self.steps_taken += 1
            self._check_finite(self.steps_taken)

    def finish(self, dt: float) -> None:
        """Take one last step shorter than dt; no steps may follow it."""
        if not 0.0 < dt < self.dt:
            raise ValueError("final step must lie in (0, %g), got %r" % (self.dt, dt))
        self._advance(dt)
        self._final_step = dt
        self._check_finite(self.steps_taken + 1)

    def state(self) -> State:
        return State(Field(self.grid, self._theta), Field(self.grid, self._psi))


def step(s: State, force: Field, dt: float) -> State:
    """One velocity Verlet step with theta pinned at both ends.

    The end values are rounded to the nearest multiple of 2 pi, which is
    theta(x_min) = 0, theta(x_max) = 2 pi for a kink and 0 for the vacuum.
    """
    integrator = VerletIntegrator(s, force, dt)
    integrator.integrate(1)
    return integrator.state()


def evolve(
    s0: State,
    fp: ForcingProfile,
    cfg: EvolveConfig,
    observer: Optional[Observer] = None,
) -> State:
    """Integrate from t = 0 to cfg.t_end.

    :param s0: initial state
    :param fp: forcing profile
    :param cfg: time stepping parameters
    :param observer: called as observer(t, state) at t = 0, after every
        cfg.diag_stride steps and at t_end if that time was not already
        observed; exceptions it raises end the run
    :raise CFLViolation: if cfg.dt is too large for the grid
    :raise FieldBlowUp: if the fields stop being finite
    :return: the final state
    """
    g = s0.grid
    cfg.check_cfl(g)
    integrator = VerletIntegrator(s0, forcing_field(fp, g), cfg.dt)
    num_steps = cfg.num_steps
    final_step = cfg.final_step
    logger.debug(
        "evolving %d steps of dt=%g (final step %g) on %r",
        num_steps,
        cfg.dt,
        final_step,
        g,
    )
    if observer is not None:
        observer(0.0, s0)
    done = 0
    while done < num_steps:
        chunk = min(cfg.diag_stride, num_steps - done)
        integrator.integrate(chunk)
        done += chunk
        if observer is not None and done % cfg.diag_stride == 0:
            observer(integrator.time, integrator.state())
    if final_step:
        integrator.finish(final_step)
    if observer is not None and (final_step or done % cfg.diag_stride != 0):
        observer(integrator.time, integrator.state())
    return integrator.state()
