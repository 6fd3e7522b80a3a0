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

"""Uniform 1-D grids, sampled fields, quadrature, norms and stencils."""

import math
from typing import Callable, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid


__all__ = [
    "Grid",
    "Field",
    "State",
    "InvalidGrid",
    "InvalidField",
    "GridMismatch",
    "trapezoid_integral",
    "inner",
    "l2_norm",
    "h1_norm",
    "linf_norm",
    "derivative",
    "second_derivative",
]


MIN_NODES = 5


class InvalidGrid(ValueError):
    """The grid parameters are not usable."""

    def __init__(self, x_min, dx, n):
        self.x_min = x_min
        self.dx = dx
        self.n = n
        super(InvalidGrid, self).__init__(
            "invalid grid: x_min=%r, dx=%r, n=%r" % (x_min, dx, n)
        )


class InvalidField(ValueError):
    """Field samples do not match their grid or are not finite."""


class GridMismatch(ValueError):
    """Two fields that are combined live on different grids."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super(GridMismatch, self).__init__("grid mismatch: %r vs %r" % (left, right))


class Grid(object):
    """A uniform grid x_i = x_min + i*dx, i = 0 .. n-1."""

    def __init__(self, x_min: float, dx: float, n: int) -> None:
        if (
            not math.isfinite(x_min)
            or not math.isfinite(dx)
            or dx <= 0
            or int(n) != n
            or n < MIN_NODES
            or not math.isfinite(x_min + (n - 1) * dx)
        ):
            raise InvalidGrid(x_min, dx, n)
        self.x_min = float(x_min)
        self.dx = float(dx)
        self.n = int(n)
        # Positions come from the index, never from repeated addition.
        self._x = self.x_min + self.dx * np.arange(self.n, dtype=float)
        self._x.setflags(write=False)

    @classmethod
    def symmetric(cls, halfwidth: float, dx: float) -> "Grid":
        """Grid on [-halfwidth, halfwidth] with spacing dx."""
        if halfwidth <= 0 or dx <= 0:
            raise InvalidGrid(-halfwidth, dx, 0)
        n = int(round(2 * halfwidth / dx)) + 1
        return cls(-halfwidth, dx, n)

    @property
    def x_max(self) -> float:
        return self.x_min + (self.n - 1) * self.dx

    @property
    def x(self) -> np.ndarray:
        return self._x

    def sample(self, func: Callable[[np.ndarray], np.ndarray]) -> "Field":
        return Field(self, func(self._x))

    def zeros(self) -> "Field":
        return Field(self, np.zeros(self.n))

    def constant(self, value: float) -> "Field":
        return Field(self, np.full(self.n, float(value)))

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (self.x_min, self.dx, self.n) == (other.x_min, other.dx, other.n)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.x_min, self.dx, self.n))

    def __repr__(self):
        return "%s(x_min=%r, dx=%r, n=%r)" % (
            type(self).__name__,
            self.x_min,
            self.dx,
            self.n,
        )


class Field(object):
    """Samples of a real function of x on a Grid.

    The sample array is read-only; arithmetic returns new fields.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values) -> None:
        values = np.array(values, dtype=float)
        if values.shape != (grid.n,):
            raise InvalidField(
                "expected %d samples, got shape %r" % (grid.n, values.shape)
            )
        if not np.all(np.isfinite(values)):
            raise InvalidField("field contains non-finite samples")
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    def _other_values(self, other):
        if isinstance(other, Field):
            if other.grid != self.grid:
                raise GridMismatch(self.grid, other.grid)
            return other.values
        return other

    def __add__(self, other: Union["Field", float]) -> "Field":
        return Field(self.grid, self.values + self._other_values(other))

    __radd__ = __add__

    def __sub__(self, other: Union["Field", float]) -> "Field":
        return Field(self.grid, self.values - self._other_values(other))

    def __rsub__(self, other: Union["Field", float]) -> "Field":
        return Field(self.grid, self._other_values(other) - self.values)

    def __mul__(self, other: Union["Field", float]) -> "Field":
        return Field(self.grid, self.values * self._other_values(other))

    __rmul__ = __mul__

    def __truediv__(self, other: float) -> "Field":
        return Field(self.grid, self.values / other)

    def __neg__(self) -> "Field":
        return Field(self.grid, -self.values)

    def __len__(self) -> int:
        return self.grid.n

    def __repr__(self):
        return "%s(%r, <%d samples>)" % (type(self).__name__, self.grid, self.grid.n)


class State(object):
    """The field pair (theta, psi) of the first order system."""

    __slots__ = ("theta", "psi")

    def __init__(self, theta: Field, psi: Field) -> None:
        if theta.grid != psi.grid:
            raise GridMismatch(theta.grid, psi.grid)
        self.theta = theta
        self.psi = psi

    @property
    def grid(self) -> Grid:
        return self.theta.grid

    @property
    def pair(self) -> Tuple[Field, Field]:
        return (self.theta, self.psi)

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, self.grid)


def _check_same_grid(a: Field, b: Field) -> None:
    if a.grid != b.grid:
        raise GridMismatch(a.grid, b.grid)


def trapezoid_integral(field: Field) -> float:
    """Trapezoid rule over the whole grid."""
    return float(trapezoid(field.values, dx=field.grid.dx))


def inner(a: Field, b: Field) -> float:
    """L2 inner product by the trapezoid rule."""
    _check_same_grid(a, b)
    return float(trapezoid(a.values * b.values, dx=a.grid.dx))


def l2_norm(field: Field) -> float:
    return math.sqrt(trapezoid_integral(field * field))


def h1_norm(field: Field) -> float:
    return math.sqrt(l2_norm(field) ** 2 + l2_norm(derivative(field)) ** 2)


def linf_norm(field: Field) -> float:
    return float(np.max(np.abs(field.values)))


def derivative(field: Field) -> Field:
    """Central differences inside, one-sided second order at both ends."""
    return Field(field.grid, np.gradient(field.values, field.grid.dx, edge_order=2))


def second_derivative(field: Field) -> Field:
    """Three-point stencil inside, one-sided four-point stencil at both ends."""
    f = field.values
    dx2 = field.grid.dx * field.grid.dx
    out = np.empty_like(f)
    out[1:-1] = (f[:-2] - 2.0 * f[1:-1] + f[2:]) / dx2
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / dx2
    out[-1] = (2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]) / dx2
    return Field(field.grid, out)
