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

"""Effective equations of motion for the kink parameters.

Three two-dimensional systems are provided, all in the form rhs(t, y):

  exact:      xi' = u,  u' = -W(eps, xi, u)
  corrected:  the restricted Hamiltonian equations truncated after the
              eps^3 term in xi'
  rescaled:   the exact system in s = eps t with u = eps uhat
"""

import logging
import math
from typing import Callable, Sequence, Tuple

import numpy as np

from .evolution import ForcingProfile
from .kink import KinkConstants, SolitonParams, VelocityOutOfRange, gamma


logger = logging.getLogger(__name__)


Vector = Tuple[float, float]
Rhs = Callable[[float, np.ndarray], Sequence[float]]

# samples used to check that an injection stays below its cap
INJECTION_SAMPLES = 1001


class IntegrationFailure(Exception):
    """The ODE integration could not be continued."""

    def __init__(self, t, reason):
        self.t = t
        self.reason = reason
        super(IntegrationFailure, self).__init__(
            "integration failed at t=%g: %s" % (t, reason)
        )


class InjectionTooLarge(ValueError):
    """An injected perturbation exceeds its declared cap."""


class ModulationState(object):
    """Parameters (xi_bar, u_bar) of the effective dynamics."""

    __slots__ = ("xi_bar", "u_bar")

    def __init__(self, xi_bar: float, u_bar: float) -> None:
        if not abs(u_bar) < 1.0:
            raise VelocityOutOfRange(u_bar)
        self.xi_bar = float(xi_bar)
        self.u_bar = float(u_bar)

    def as_tuple(self) -> Vector:
        return (self.xi_bar, self.u_bar)

    def __repr__(self):
        return "%s(xi_bar=%r, u_bar=%r)" % (
            type(self).__name__,
            self.xi_bar,
            self.u_bar,
        )


class Trajectory(object):
    """Time nodes and the (xi, u) pair stored at each node."""

    def __init__(self, times, states) -> None:
        times = np.array(times, dtype=float)
        states = np.array(states, dtype=float)
        if times.ndim != 1 or states.shape != (len(times), 2):
            raise ValueError(
                "expected n times and an n x 2 state array, got %r and %r"
                % (times.shape, states.shape)
            )
        if len(times) > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("trajectory times must be increasing")
        times.setflags(write=False)
        states.setflags(write=False)
        self.times = times
        self.states = states

    @property
    def xi(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def u(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def final(self) -> Vector:
        return (float(self.states[-1, 0]), float(self.states[-1, 1]))

    def at(self, t: float) -> Vector:
        """Linear interpolation between the stored nodes."""
        return (
            float(np.interp(t, self.times, self.states[:, 0])),
            float(np.interp(t, self.times, self.states[:, 1])),
        )

    def __len__(self) -> int:
        return len(self.times)

    def __repr__(self):
        return "%s(t=[%g, %g], %d nodes)" % (
            type(self).__name__,
            self.times[0],
            self.times[-1],
            len(self.times),
        )


def w_drift(fp: ForcingProfile, p: SolitonParams, kc: KinkConstants) -> float:
    """W = eps^2 f(eps xi) i1 / (gamma(u)^3 m)."""
    g = gamma(p.u)
    return float(fp.force(p.xi)) * kc.i1 / (g ** 3 * kc.m)


def exact_ode_rhs(
    m_state: ModulationState, fp: ForcingProfile, kc: KinkConstants
) -> Vector:
    u = m_state.u_bar
    return (u, -w_drift(fp, SolitonParams(m_state.xi_bar, u), kc))


def corrected_ode_rhs(
    m_state: ModulationState, fp: ForcingProfile, kc: KinkConstants
) -> Vector:
    """Restricted Hamiltonian equations without their eps^5 and eps^4 tails."""
    xi = m_state.xi_bar
    u = m_state.u_bar
    g3 = gamma(u) ** 3
    correction = float(fp.force_gradient(xi)) * u * kc.i2 / (g3 * kc.m)
    return (u - correction, -w_drift(fp, SolitonParams(xi, u), kc))


def rescaled_ode_rhs(
    hat_state: Vector, fp: ForcingProfile, kc: KinkConstants
) -> Vector:
    """(uhat, -f(eps xihat) i1 / (gamma(eps uhat)^3 m))."""
    xi_hat, u_hat = hat_state
    eps = fp.epsilon
    g = gamma(eps * u_hat)
    return (u_hat, -float(fp.f(eps * xi_hat)) * kc.i1 / (g ** 3 * kc.m))


def exact_system(fp: ForcingProfile, kc: KinkConstants) -> Rhs:
    def rhs(t, y):
        return exact_ode_rhs(ModulationState(y[0], y[1]), fp, kc)

    return rhs


def corrected_system(fp: ForcingProfile, kc: KinkConstants) -> Rhs:
    def rhs(t, y):
        return corrected_ode_rhs(ModulationState(y[0], y[1]), fp, kc)

    return rhs


def rescaled_system(fp: ForcingProfile, kc: KinkConstants) -> Rhs:
    def rhs(s, y):
        return rescaled_ode_rhs((y[0], y[1]), fp, kc)

    return rhs


def rk4_integrate(
    rhs: Rhs, y0: Vector, t0: float, t1: float, dt: float
) -> Trajectory:
    """Classical fourth order Runge-Kutta from t0 to t1.

    Every step is stored. The last step is shortened so that the final node
    is exactly t1.

    :param rhs: right-hand side, called as rhs(t, y)
    :param y0: initial value
    :param t0: initial time
    :param t1: final time, not before t0
    :param dt: step size
    :raise IntegrationFailure: if the right-hand side cannot be evaluated
        (for instance a velocity leaving (-1, 1)) or the solution stops
        being finite
    """
    if not dt > 0:
        raise ValueError("step size must be positive, got %r" % (dt,))
    if t1 < t0:
        raise ValueError("t1=%r precedes t0=%r" % (t1, t0))
    num_steps = int(math.ceil((t1 - t0) / dt - 1e-9))
    times = [t0 + k * dt for k in range(num_steps)] + [t1]
    y = np.array(y0, dtype=float)
    states = np.empty((len(times), 2))
    states[0] = y

    def evaluate(t, value):
        try:
            return np.asarray(rhs(t, value), dtype=float)
        except VelocityOutOfRange as e:
            raise IntegrationFailure(t, str(e))

    for k in range(num_steps):
        t = times[k]
        h = times[k + 1] - t
        k1 = evaluate(t, y)
        k2 = evaluate(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = evaluate(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = evaluate(t + h, y + h * k3)
        y = y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        if not np.all(np.isfinite(y)):
            raise IntegrationFailure(times[k + 1], "non-finite state")
        states[k + 1] = y
    return Trajectory(times, states)


def unscale(hat_traj: Trajectory, eps: float) -> Trajectory:
    """Map (s, xihat, uhat) to (t, xi, u) = (s / eps, xihat, eps uhat)."""
    if not eps > 0:
        raise ValueError("epsilon must be positive, got %r" % (eps,))
    states = np.column_stack([hat_traj.xi, eps * hat_traj.u])
    return Trajectory(hat_traj.times / eps, states)


def scale(traj: Trajectory, eps: float) -> Trajectory:
    """Inverse of unscale."""
    if not eps > 0:
        raise ValueError("epsilon must be positive, got %r" % (eps,))
    states = np.column_stack([traj.xi, traj.u / eps])
    return Trajectory(traj.times * eps, states)


def modulation_trajectory(
    fp: ForcingProfile,
    kc: KinkConstants,
    y0: Vector,
    t_end: float,
    ds: float = 1e-3,
) -> Trajectory:
    """Exact modulation dynamics from y0 = (xi_s, u_s) over [0, t_end].

    With a forcing present the rescaled system is integrated on
    s in [0, eps t_end] and unscaled; otherwise the motion is free.
    """
    if fp.is_zero:
        return rk4_integrate(
            exact_system(fp, kc), y0, 0.0, t_end, min(1e-3, t_end / 10.0)
        )
    eps = fp.epsilon
    hat = rk4_integrate(
        rescaled_system(fp, kc), (y0[0], y0[1] / eps), 0.0, eps * t_end, ds
    )
    return unscale(hat, eps)


class GronwallSpec(object):
    """Injected perturbations eps1(s), eps2(s) of the rescaled system."""

    def __init__(
        self,
        eps1: Callable[[float], float],
        eps2: Callable[[float], float],
        bound: float,
    ) -> None:
        if not bound >= 0:
            raise ValueError("injection bound must be non-negative")
        samples = np.linspace(0.0, 1.0, INJECTION_SAMPLES)
        peak = max(max(abs(eps1(s)), abs(eps2(s))) for s in samples)
        if peak > bound * (1.0 + 1e-12):
            raise InjectionTooLarge(
                "injection reaches %g, above the cap %g" % (peak, bound)
            )
        self.eps1 = eps1
        self.eps2 = eps2
        self.bound = float(bound)

    @classmethod
    def constant(cls, value: float, bound: float = None) -> "GronwallSpec":
        """Both injections equal to value on all of [0, 1]."""
        if bound is None:
            bound = abs(value)
        return cls(lambda s: value, lambda s: value, bound)

    @classmethod
    def capped(cls, eps: float, c_bar: float = 1.0, sign: float = 1.0) -> "GronwallSpec":
        """Constant injections at the cap c_bar eps^(3/4)."""
        cap = c_bar * eps ** 0.75
        return cls.constant(sign * cap, cap)

    def negated(self) -> "GronwallSpec":
        return GronwallSpec(
            lambda s: -self.eps1(s), lambda s: -self.eps2(s), self.bound
        )


def gronwall_gaps(
    spec: GronwallSpec,
    fp: ForcingProfile,
    kc: KinkConstants,
    y0: Vector,
    dt: float = 1e-3,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Signed gaps (s, xi_tilde - xi_hat, u_tilde - u_hat) on s in [0, 1]."""
    exact = rescaled_system(fp, kc)

    def perturbed(s, y):
        base = exact(s, y)
        return (base[0] + spec.eps1(s), base[1] + spec.eps2(s))

    reference = rk4_integrate(exact, y0, 0.0, 1.0, dt)
    injected = rk4_integrate(perturbed, y0, 0.0, 1.0, dt)
    return (
        reference.times,
        injected.xi - reference.xi,
        injected.u - reference.u,
    )


def gronwall_compare(
    spec: GronwallSpec,
    fp: ForcingProfile,
    kc: KinkConstants,
    y0: Vector,
    dt: float = 1e-3,
) -> Vector:
    """Largest gaps between the injected and the exact rescaled systems.

    :return: (max |xi gap|, max |u gap|) over s in [0, 1]
    """
    _, xi_gap, u_gap = gronwall_gaps(spec, fp, kc, y0, dt)
    return (float(np.max(np.abs(xi_gap))), float(np.max(np.abs(u_gap))))


def gronwall_bound(sup_injection: float, lipschitz: float, T: float = 1.0) -> float:
    """sqrt(2) T exp(2 C T) sup |eps_j| for a Lipschitz constant C."""
    return math.sqrt(2.0) * T * math.exp(2.0 * lipschitz * T) * sup_injection
