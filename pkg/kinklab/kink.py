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

"""The sine-Gordon kink and its two-parameter family of boosted kinks.

A point on the solitary manifold is given by its centre ``xi`` and velocity
``u``; the fields are

    theta0(xi, u, x) = K(gamma(u) (x - xi))
    psi0(xi, u, x) = -u gamma(u) K'(gamma(u) (x - xi))

with K(x) = 4 arctan(exp(x)).
"""

import functools
import math
from typing import NamedTuple, Tuple

import numpy as np
from scipy.integrate import trapezoid

from .grid import Field, Grid, State


__all__ = [
    "VelocityOutOfRange",
    "InsufficientQuadrature",
    "gamma",
    "kink",
    "kink_d1",
    "kink_d2",
    "kink_d3",
    "SolitonParams",
    "ParamWindow",
    "KinkConstants",
    "kink_constants",
    "default_kink_constants",
    "soliton_pair",
    "TangentFields",
    "SecondTangentFields",
    "tangent_fields",
    "second_tangent_fields",
]


class VelocityOutOfRange(ValueError):
    """A velocity outside the open interval (-1, 1)."""

    def __init__(self, u):
        self.u = u
        super(VelocityOutOfRange, self).__init__(
            "velocity %r outside the interval (-1, 1)" % (u,)
        )


class InsufficientQuadrature(ValueError):
    """Quadrature domain too short or step too coarse for the kink integrals."""

    def __init__(self, halfwidth, dz):
        self.halfwidth = halfwidth
        self.dz = dz
        super(InsufficientQuadrature, self).__init__(
            "kink quadrature needs halfwidth >= 30 and 0 < dz <= 0.01, "
            "got halfwidth=%r, dz=%r" % (halfwidth, dz)
        )


def gamma(u: float) -> float:
    """Lorentz factor 1/sqrt(1 - u^2).

    :param u: velocity, strictly inside (-1, 1)
    :raise VelocityOutOfRange: if |u| >= 1 or u is not a number
    """
    if not abs(u) < 1.0:
        raise VelocityOutOfRange(u)
    return 1.0 / math.sqrt(1.0 - u * u)


def _gamma_d1(u: float) -> float:
    return u * gamma(u) ** 3


def _gamma_d2(u: float) -> float:
    g = gamma(u)
    return g ** 3 + 3.0 * u * u * g ** 5


def kink(x):
    """4 arctan(exp(x)), without overflow for large |x|."""
    x = np.asarray(x, dtype=float)
    tail = 4.0 * np.arctan(np.exp(-np.abs(x)))
    return np.where(x > 0, 2.0 * math.pi - tail, tail)


def kink_d1(x):
    """K'(x) = 2 sech(x)."""
    x = np.asarray(x, dtype=float)
    e = np.exp(-np.abs(x))
    return 4.0 * e / (1.0 + e * e)


def kink_d2(x):
    """K''(x) = -2 sech(x) tanh(x), which equals sin(K(x))."""
    x = np.asarray(x, dtype=float)
    return -kink_d1(x) * np.tanh(x)


def kink_d3(x):
    """K'''(x) = 2 sech(x) (1 - 2 sech(x)^2)."""
    d1 = kink_d1(x)
    return d1 * (1.0 - 0.5 * d1 * d1)


class SolitonParams(object):
    """Collective coordinates of a kink: centre xi and velocity u."""

    __slots__ = ("xi", "u")

    def __init__(self, xi: float, u: float) -> None:
        if not abs(u) < 1.0:
            raise VelocityOutOfRange(u)
        self.xi = float(xi)
        self.u = float(u)

    @property
    def gamma(self) -> float:
        return gamma(self.u)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.xi, self.u)

    def __eq__(self, other):
        if not isinstance(other, SolitonParams):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "%s(xi=%r, u=%r)" % (type(self).__name__, self.xi, self.u)


class ParamWindow(object):
    """The nested velocity windows |u| < U + (1 - U)/l.

    The admissible set for level l is all of R in xi times
    (-U - V(l), U + V(l)) in u.
    """

    def __init__(self, U: float, l: float = 2.0) -> None:
        if not 0.0 < U < 1.0:
            raise ValueError("window U must lie in (0, 1), got %r" % (U,))
        if not l > 0:
            raise ValueError("window level must be positive, got %r" % (l,))
        self.U = float(U)
        self.l = float(l)

    def V(self, l: float = None) -> float:
        if l is None:
            l = self.l
        return (1.0 - self.U) / l

    def bound(self, l: float = None) -> float:
        return self.U + self.V(l)

    def at(self, l: float) -> "ParamWindow":
        return ParamWindow(self.U, l)

    def contains(self, p, l: float = None) -> bool:
        """Check whether a SolitonParams (or a bare velocity) lies inside."""
        u = p.u if isinstance(p, SolitonParams) else p
        return abs(u) < self.bound(l)

    def __repr__(self):
        return "%s(U=%r, l=%r)" % (type(self).__name__, self.U, self.l)


class KinkConstants(NamedTuple):
    """Kink integrals: m = int K'^2, i1 = int K', i2 = int Z^2 K'."""

    m: float
    i1: float
    i2: float


def kink_constants(
    quadrature_halfwidth: float = 40.0, dz: float = 0.005
) -> KinkConstants:
    """Compute the three kink integrals by the trapezoid rule.

    :param quadrature_halfwidth: integrate over [-halfwidth, halfwidth]
    :param dz: quadrature step
    :raise InsufficientQuadrature: for a halfwidth below 30 or dz above 0.01
    :return: KinkConstants
    """
    if not quadrature_halfwidth >= 30.0 or not 0.0 < dz <= 0.01:
        raise InsufficientQuadrature(quadrature_halfwidth, dz)
    z = Grid.symmetric(quadrature_halfwidth, dz).x
    d1 = kink_d1(z)
    return KinkConstants(
        m=float(trapezoid(d1 * d1, dx=dz)),
        i1=float(trapezoid(d1, dx=dz)),
        i2=float(trapezoid(z * z * d1, dx=dz)),
    )


@functools.lru_cache(maxsize=None)
def default_kink_constants() -> KinkConstants:
    return kink_constants()


def _arguments(p: SolitonParams, g: Grid):
    y = g.x - p.xi
    gm = gamma(p.u)
    return y, gm, gm * y


def soliton_pair(p: SolitonParams, g: Grid) -> State:
    """Sample theta0(xi, u, .) and psi0(xi, u, .) on a grid."""
    _, gm, z = _arguments(p, g)
    return State(Field(g, kink(z)), Field(g, -p.u * gm * kink_d1(z)))


class TangentFields(NamedTuple):
    """First parameter derivatives of (theta0, psi0)."""

    xi_theta: Field
    xi_psi: Field
    u_theta: Field
    u_psi: Field

    @property
    def xi(self) -> Tuple[Field, Field]:
        return (self.xi_theta, self.xi_psi)

    @property
    def u(self) -> Tuple[Field, Field]:
        return (self.u_theta, self.u_psi)


class SecondTangentFields(NamedTuple):
    """Second parameter derivatives of (theta0, psi0)."""

    xixi_theta: Field
    xixi_psi: Field
    xiu_theta: Field
    xiu_psi: Field
    uu_theta: Field
    uu_psi: Field

    @property
    def xixi(self) -> Tuple[Field, Field]:
        return (self.xixi_theta, self.xixi_psi)

    @property
    def xiu(self) -> Tuple[Field, Field]:
        return (self.xiu_theta, self.xiu_psi)

    @property
    def uu(self) -> Tuple[Field, Field]:
        return (self.uu_theta, self.uu_psi)


def tangent_fields(p: SolitonParams, g: Grid) -> TangentFields:
    """Closed-form d/dxi and d/du of the soliton pair, sampled on g."""
    y, gm, z = _arguments(p, g)
    u = p.u
    d1 = kink_d1(z)
    d2 = kink_d2(z)
    return TangentFields(
        xi_theta=Field(g, -gm * d1),
        xi_psi=Field(g, u * gm * gm * d2),
        u_theta=Field(g, _gamma_d1(u) * y * d1),
        u_psi=Field(g, -(gm ** 3) * d1 - u * u * gm ** 4 * y * d2),
    )


def second_tangent_fields(p: SolitonParams, g: Grid) -> SecondTangentFields:
    """Closed-form second derivatives of the soliton pair in (xi, u)."""
    y, gm, z = _arguments(p, g)
    u = p.u
    gp = _gamma_d1(u)
    gpp = _gamma_d2(u)
    d1 = kink_d1(z)
    d2 = kink_d2(z)
    d3 = kink_d3(z)
    return SecondTangentFields(
        xixi_theta=Field(g, gm * gm * d2),
        xixi_psi=Field(g, -u * gm ** 3 * d3),
        xiu_theta=Field(g, -gp * (d1 + z * d2)),
        xiu_psi=Field(
            g,
            (gm ** 2 + 2.0 * u * u * gm ** 4) * d2 + u * u * gm ** 5 * y * d3,
        ),
        uu_theta=Field(g, gpp * y * d1 + gp * gp * y * y * d2),
        uu_psi=Field(
            g,
            -3.0 * u * gm ** 5 * d1
            - y * d2 * (u * gm ** 6 + 2.0 * u * gm ** 4 + 4.0 * u ** 3 * gm ** 6)
            - u ** 3 * gm ** 7 * y * y * d3,
        ),
    )
