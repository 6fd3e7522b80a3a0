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

"""Conserved quantities, the Lyapunov functional and related diagnostics."""

import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from .evolution import ForcingProfile
from .grid import (
    Field,
    Grid,
    State,
    derivative,
    trapezoid_integral,
)
from .kink import (
    KinkConstants,
    SolitonParams,
    gamma,
    kink,
    kink_d1,
    soliton_pair,
    tangent_fields,
)
from .symplectic import Decomposition


__all__ = [
    "energy",
    "momentum",
    "hamiltonian_eps",
    "restricted_hamiltonian",
    "restricted_hamiltonian_gradient",
    "lyapunov",
    "e_functional",
    "n_check",
    "project_n2",
    "remainder",
    "transversal_velocity",
    "lyapunov_rate_terms",
    "lyapunov_rate",
    "FunctionalReport",
    "functional_report",
]


RESTRICTED_DY = 0.01


def energy(s: State) -> float:
    """Unforced energy 1/2 int psi^2 + theta_x^2 + 2 (1 - cos theta) dx."""
    theta = s.theta.values
    theta_x = derivative(s.theta).values
    # 1 - cos(theta) = 2 sin(theta / 2)^2
    potential = 4.0 * np.sin(0.5 * theta) ** 2
    density = 0.5 * (s.psi.values ** 2 + theta_x ** 2 + potential)
    return float(trapezoid(density, dx=s.grid.dx))


def momentum(s: State) -> float:
    """int psi theta_x dx."""
    return trapezoid_integral(s.psi * derivative(s.theta))


def hamiltonian_eps(s: State, fp: ForcingProfile) -> float:
    """Energy minus the work of the forcing, int F theta dx."""
    force = fp.force(s.grid.x)
    return energy(s) - float(trapezoid(force * s.theta.values, dx=s.grid.dx))


def _restricted_grid(p: SolitonParams, fp: ForcingProfile) -> Grid:
    # covers the forcing bump at y = -xi and the kink core at y = 0
    halfwidth = abs(p.xi) + 40.0 * fp.width / fp.epsilon + 40.0
    return Grid.symmetric(halfwidth, RESTRICTED_DY)


def restricted_hamiltonian(
    p: SolitonParams, fp: ForcingProfile, kc: KinkConstants
) -> float:
    """m gamma(u) - int eps^2 f(eps (y + xi)) K(gamma(u) y) dy."""
    g = gamma(p.u)
    if fp.is_zero:
        return kc.m * g
    y = _restricted_grid(p, fp).x
    integrand = fp.force(y + p.xi) * kink(g * y)
    return kc.m * g - float(trapezoid(integrand, dx=RESTRICTED_DY))


def restricted_hamiltonian_gradient(
    p: SolitonParams, fp: ForcingProfile, kc: KinkConstants
) -> Tuple[float, float]:
    """Partial derivatives of restricted_hamiltonian in xi and u.

    d/dxi = gamma int F(y + xi) K'(gamma y) dy
    d/du = m u gamma^3 - u gamma^3 int F(y + xi) y K'(gamma y) dy
    """
    g = gamma(p.u)
    g3 = g ** 3
    if fp.is_zero:
        return (0.0, kc.m * p.u * g3)
    y = _restricted_grid(p, fp).x
    weighted = fp.force(y + p.xi) * kink_d1(g * y)
    d_xi = g * float(trapezoid(weighted, dx=RESTRICTED_DY))
    d_u = kc.m * p.u * g3 - p.u * g3 * float(trapezoid(y * weighted, dx=RESTRICTED_DY))
    return (d_xi, d_u)


def _cos_theta0(d: Decomposition) -> np.ndarray:
    p = d.params
    return np.cos(kink(gamma(p.u) * (d.grid.x - p.xi)))


def lyapunov(d: Decomposition) -> float:
    """int w^2/2 + v_x^2/2 + cos(theta0) v^2/2 + u w v_x dx."""
    v = d.v.values
    w = d.w.values
    v_x = derivative(d.v).values
    density = (
        0.5 * w * w + 0.5 * v_x * v_x + 0.5 * _cos_theta0(d) * v * v
        + d.params.u * w * v_x
    )
    return float(trapezoid(density, dx=d.grid.dx))


def e_functional(d: Decomposition) -> float:
    """The completed-square form 1/2 int (w + u v_x)^2 + v_Z^2 + cos(K(Z)) v^2.

    Here v_Z = v_x / gamma(u) is the derivative in the comoving variable
    Z = gamma(u) (x - xi).
    """
    u = d.params.u
    v = d.v.values
    v_x = derivative(d.v).values
    v_z = v_x / gamma(u)
    density = 0.5 * ((d.w.values + u * v_x) ** 2 + v_z * v_z + _cos_theta0(d) * v * v)
    return float(trapezoid(density, dx=d.grid.dx))


def _n_pair(v: Field, w: Field, p: SolitonParams) -> Tuple[float, float]:
    t = tangent_fields(p, v.grid)
    dx = v.grid.dx
    n1 = trapezoid(t.xi_psi.values * v.values - t.xi_theta.values * w.values, dx=dx)
    n2 = trapezoid(t.u_psi.values * v.values - t.u_theta.values * w.values, dx=dx)
    return (float(n1), float(n2))


def n_check(d: Decomposition) -> Tuple[float, float]:
    """int d_xi psi0 v - d_xi theta0 w dx and the same with d_u."""
    return _n_pair(d.v, d.w, d.params)


def project_n2(v: Field, w: Field, p: SolitonParams) -> Tuple[Field, Field]:
    """Remove the t_xi component of (v, w) that the second condition sees."""
    t = tangent_fields(p, v.grid)
    alpha = _n_pair(v, w, p)[1] / _n_pair(t.xi_theta, t.xi_psi, p)[1]
    return (v - alpha * t.xi_theta, w - alpha * t.xi_psi)


def remainder(v: Field, theta0: Field) -> Field:
    """sin(theta0 + v) - sin(theta0) - cos(theta0) v + sin(theta0) v^2/2.

    Evaluated as sin(theta0) (v^2/2 - 2 sin(v/2)^2) + cos(theta0) (sin v - v)
    to keep the cubic size for small v.
    """
    if v.grid != theta0.grid:
        raise ValueError("remainder fields on different grids")
    x = v.values
    t0 = theta0.values
    values = np.sin(t0) * (0.5 * x * x - 2.0 * np.sin(0.5 * x) ** 2) + np.cos(t0) * (
        np.sin(x) - x
    )
    return Field(v.grid, values)


def transversal_velocity(
    d: Decomposition, rates: Tuple[float, float]
) -> Field:
    """dv/dt = w - xi' d_xi theta0 - u' d_u theta0 + u d_xi theta0."""
    xi_dot, u_dot = rates
    t = tangent_fields(d.params, d.grid)
    return d.w + (d.params.u - xi_dot) * t.xi_theta - u_dot * t.u_theta


def lyapunov_rate_terms(
    d: Decomposition,
    d_params: Tuple[float, float],
    fp: ForcingProfile,
    v_dot: Optional[Field] = None,
) -> Dict[str, float]:
    """Each term of the time derivative of lyapunov(d).

    The term "orthogonality" is u' times the first orthogonality pairing;
    it vanishes for a decomposition that satisfies both conditions and is
    reported so that the sum is exact off them as well.
    """
    p = d.params
    u = p.u
    xi_dot, u_dot = d_params
    g = d.grid
    dx = g.dx
    gm = gamma(u)
    y = g.x - p.xi
    z = gm * y
    theta0 = soliton_pair(p, g).theta
    t = tangent_fields(p, g)
    v = d.v.values
    w = d.w.values
    v_x = derivative(d.v).values
    sin0 = np.sin(theta0.values)
    nonlinear = 0.5 * sin0 * v * v - remainder(d.v, theta0).values
    if v_dot is None:
        v_dot = transversal_velocity(d, d_params)
    force = fp.force(g.x)
    force_gradient = fp.force_gradient(g.x)
    d1 = kink_d1(z)

    def integral(values):
        return float(trapezoid(values, dx=dx))

    return {
        "nonlinear": integral((w + u * v_x) * nonlinear),
        "velocity_curvature": -u_dot * integral(0.5 * sin0 * t.u_theta.values * v * v),
        "centre_drift": (xi_dot - u) * integral(np.cos(theta0.values) * v * v_x),
        "velocity_coupling": u_dot * integral(w * v_x),
        "forcing": integral(v_dot.values * force),
        "forcing_velocity": u * u_dot * gm ** 3 * integral(y * d1 * force),
        "forcing_centre": (u - xi_dot) * gm * integral(d1 * force),
        "forcing_gradient": -u * integral(v * force_gradient),
        "orthogonality": u_dot * _n_pair(d.v, d.w, p)[0],
    }


def lyapunov_rate(
    d: Decomposition,
    d_params: Tuple[float, float],
    fp: ForcingProfile,
    v_dot: Optional[Field] = None,
) -> float:
    """dL/dt given parameter rates (xi', u').

    :param d: decomposition at the current time
    :param d_params: (xi', u') estimates
    :param fp: forcing profile
    :param v_dot: dv/dt; taken from transversal_velocity when omitted
    :return: the rate of change of lyapunov(d)
    """
    return math.fsum(lyapunov_rate_terms(d, d_params, fp, v_dot).values())


class FunctionalReport(object):
    """Functionals evaluated on one state and its decomposition."""

    def __init__(self, H, Pi, H_eps, L, E, n2_check):
        self.H = H
        self.Pi = Pi
        self.H_eps = H_eps
        self.L = L
        self.E = E
        self.n2_check = n2_check

    def as_dict(self) -> Dict[str, float]:
        return {
            "H": self.H,
            "Pi": self.Pi,
            "H_eps": self.H_eps,
            "L": self.L,
            "E": self.E,
            "n2_check": self.n2_check,
        }

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, self.as_dict())


def functional_report(s: State, d: Decomposition, fp: ForcingProfile) -> FunctionalReport:
    return FunctionalReport(
        H=energy(s),
        Pi=momentum(s),
        H_eps=hamiltonian_eps(s, fp),
        L=lyapunov(d),
        E=e_functional(d),
        n2_check=n_check(d)[1],
    )
