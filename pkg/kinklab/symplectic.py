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

"""Symplectic form, orthogonality conditions and the decomposition of a state.

A state (theta, psi) close to the solitary manifold is written as

    theta = theta0(xi, u, .) + v,    psi = psi0(xi, u, .) + w

where (xi, u) are fixed by requiring (v, w) to be symplectically orthogonal
to both tangent vectors t_xi and t_u of the manifold.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from .evolution import rhs
from .grid import Field, Grid, State, inner
from .kink import (
    ParamWindow,
    SolitonParams,
    second_tangent_fields,
    soliton_pair,
    tangent_fields,
)


logger = logging.getLogger(__name__)


Pair = Tuple[Field, Field]

# Jacobians with a larger condition number are treated as singular.
MAX_CONDITION = 1e12
MAX_HALVINGS = 10


class DecompositionError(Exception):
    """The symplectic decomposition could not be computed."""


class SingularJacobian(DecompositionError):
    """The orthogonality Jacobian is numerically singular."""

    def __init__(self, params, condition):
        self.params = params
        self.condition = condition
        super(SingularJacobian, self).__init__(
            "singular Jacobian at %r (condition %g)" % (params, condition)
        )


class NoConvergence(DecompositionError):
    """Newton iteration did not reach the tolerance."""

    def __init__(self, params, iterations, residual):
        self.params = params
        self.iterations = iterations
        self.residual = residual
        super(NoConvergence, self).__init__(
            "no convergence after %d iterations at %r (residual %g)"
            % (iterations, params, residual)
        )


class WindowExit(DecompositionError):
    """The parameters left the admissible window.

    params is the last admissible SolitonParams; rejected_u is the velocity
    that fell outside, which may not be a valid velocity at all.
    """

    def __init__(self, params, window, rejected_u=None):
        self.params = params
        self.window = window
        self.rejected_u = params.u if rejected_u is None else float(rejected_u)
        super(WindowExit, self).__init__(
            "velocity %g from %r left the window |u| < %g"
            % (self.rejected_u, params, window.bound())
        )


class Decomposition(object):
    """Parameters on the manifold plus the transversal fields (v, w)."""

    def __init__(
        self,
        params: SolitonParams,
        v: Field,
        w: Field,
        newton_iterations: int,
        residual_norm: float,
        residuals: Optional[Tuple[float, float]] = None,
    ) -> None:
        self.params = params
        self.v = v
        self.w = w
        self.newton_iterations = newton_iterations
        self.residual_norm = residual_norm
        self.residuals = residuals

    @property
    def grid(self) -> Grid:
        return self.v.grid

    def state(self) -> State:
        """Reassemble the full state theta0 + v, psi0 + w."""
        base = soliton_pair(self.params, self.grid)
        return State(base.theta + self.v, base.psi + self.w)

    def __repr__(self):
        return "%s(%r, iterations=%d, residual=%g)" % (
            type(self).__name__,
            self.params,
            self.newton_iterations,
            self.residual_norm,
        )


def omega(a: Pair, b: Pair) -> float:
    """Omega(a, b) = int b_psi a_theta - a_psi b_theta dx."""
    return inner(b[1], a[0]) - inner(a[1], b[0])


def _transversal(s: State, p: SolitonParams) -> Pair:
    base = soliton_pair(p, s.grid)
    return (s.theta - base.theta, s.psi - base.psi)


def orthogonality_residual(s: State, p: SolitonParams) -> Tuple[float, float]:
    """The pairings (Omega((v, w), t_xi), Omega((v, w), t_u))."""
    vw = _transversal(s, p)
    t = tangent_fields(p, s.grid)
    return (omega(vw, t.xi), omega(vw, t.u))


def tangent_gram(p: SolitonParams, g: Grid) -> np.ndarray:
    """Matrix of Omega(t_j, t_k) for j, k in (xi, u)."""
    t = tangent_fields(p, g)
    vectors = (t.xi, t.u)
    return np.array([[omega(a, b) for b in vectors] for a in vectors])


def _pairing_matrix(vw: Pair, p: SolitonParams, g: Grid) -> np.ndarray:
    s2 = second_tangent_fields(p, g)
    # row j is the residual, column k the parameter it is differentiated by
    return np.array(
        [
            [omega(vw, s2.xixi), omega(vw, s2.xiu)],
            [omega(vw, s2.xiu), omega(vw, s2.uu)],
        ]
    )


def m_matrix(d: Decomposition) -> np.ndarray:
    """Pairings of (v, w) with the second derivatives of the tangents.

    The orthogonality Jacobian is tangent_gram + m_matrix; while m_matrix
    stays small against the Gram matrix the Jacobian remains invertible.
    """
    return _pairing_matrix((d.v, d.w), d.params, d.grid)


def n_jacobian(s: State, p: SolitonParams) -> np.ndarray:
    """Derivative of orthogonality_residual in (xi, u) at fixed s.

    Entry [j, k] is the derivative of residual j by parameter k.
    """
    g = s.grid
    return tangent_gram(p, g) + _pairing_matrix(_transversal(s, p), p, g)


def omega_orthogonalize(v: Field, w: Field, p: SolitonParams) -> Pair:
    """Remove the tangent components of (v, w) in the Omega pairing.

    The result satisfies both orthogonality conditions at p.
    """
    t = tangent_fields(p, v.grid)
    n_xi = omega((v, w), t.xi)
    n_u = omega((v, w), t.u)
    a = n_u / omega(t.xi, t.u)
    b = n_xi / omega(t.u, t.xi)
    return (
        v - a * t.xi_theta - b * t.u_theta,
        w - a * t.xi_psi - b * t.u_psi,
    )


def parameter_rates(s: State, p: SolitonParams, force: Field) -> Tuple[float, float]:
    """Instantaneous (xi', u') that keep the orthogonality conditions.

    Differentiating the conditions along the flow gives
    J (xi', u') = -(Omega(dS/dt, t_xi), Omega(dS/dt, t_u)).
    """
    ds = rhs(s, force)
    t = tangent_fields(p, s.grid)
    b = np.array([omega(ds.pair, t.xi), omega(ds.pair, t.u)])
    rates = -np.linalg.solve(n_jacobian(s, p), b)
    return (float(rates[0]), float(rates[1]))


def decompose(
    s: State,
    guess: SolitonParams,
    window: ParamWindow,
    tol: float = 1e-10,
    max_iter: int = 25,
) -> Decomposition:
    """Find (xi, u) such that (v, w) is orthogonal to the manifold.

    Newton iteration with the exact Jacobian. A step that would take u
    outside the level-2 window is halved, at most MAX_HALVINGS times.

    :param s: state to decompose
    :param guess: starting parameters
    :param window: parameter window; iterates stay in its level-2 set
    :param tol: tolerance on max(|N1|, |N2|)
    :param max_iter: maximum number of Newton steps
    :raise SingularJacobian: if the Jacobian is numerically singular
    :raise NoConvergence: if max_iter steps do not reach tol
    :raise WindowExit: if the iterate cannot be kept inside the window
    :return: Decomposition
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive, got %r" % (tol,))
    level2 = window.at(2)
    if not level2.contains(guess):
        raise WindowExit(guess, level2)
    p = guess
    residual_norm = math.inf
    for iteration in range(max_iter + 1):
        n = np.array(orthogonality_residual(s, p))
        residual_norm = float(np.max(np.abs(n)))
        logger.debug(
            "newton %d: xi=%.15g u=%.15g residual=%.3e",
            iteration,
            p.xi,
            p.u,
            residual_norm,
        )
        if residual_norm <= tol:
            v, w = _transversal(s, p)
            return Decomposition(
                p, v, w, iteration, residual_norm, (float(n[0]), float(n[1]))
            )
        if iteration == max_iter:
            break
        jac = n_jacobian(s, p)
        condition = float(np.linalg.cond(jac))
        if not math.isfinite(condition) or condition > MAX_CONDITION:
            raise SingularJacobian(p, condition)
        delta = np.linalg.solve(jac, n)
        scale = 1.0
        for _ in range(MAX_HALVINGS + 1):
            u_new = p.u - scale * delta[1]
            if level2.contains(u_new):
                break
            scale *= 0.5
        else:
            raise WindowExit(p, level2, rejected_u=p.u - delta[1])
        p = SolitonParams(p.xi - scale * delta[0], u_new)
    raise NoConvergence(p, max_iter, residual_norm)
