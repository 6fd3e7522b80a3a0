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

"""Plain text configuration: ``key = value`` lines with dotted keys.

Lines starting with ``#`` are comments. Every key has a default, listed in
OPTIONS; files and ``--set`` overrides may only name known keys.
"""

import math
from typing import Callable, Dict, Iterable, List, Optional

from .evolution import FAMILIES, EvolveConfig, ForcingProfile
from .harness import PERTURBATIONS, RunConfig
from .kink import ParamWindow


class ConfigError(Exception):
    """Unreadable configuration, unknown key or unparseable value."""

    def __init__(self, key, reason):
        self.key = key
        self.reason = reason
        super(ConfigError, self).__init__("%s: %s" % (key, reason))


def _float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("not a finite number")
    return value


def _positive(text: str) -> float:
    value = _float(text)
    if not value > 0:
        raise ValueError("must be positive")
    return value


def _non_negative(text: str) -> float:
    value = _float(text)
    if value < 0:
        raise ValueError("must not be negative")
    return value


def _count(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError("must be at least 1")
    return value


def _seed(text: str) -> int:
    return int(text)


def _choice(choices):
    def parse(text: str) -> str:
        if text not in choices:
            raise ValueError("expected one of %s" % ", ".join(choices))
        return text

    return parse


def _t_end(text: str) -> Optional[float]:
    if text == "auto":
        return None
    return _positive(text)


def _eps_list(text: str) -> List[float]:
    values = [_positive(item.strip()) for item in text.split(",") if item.strip()]
    if not values:
        raise ValueError("empty list")
    return values


class Option(object):

    def __init__(self, key: str, default: str, parse: Callable[[str], object], help: str):
        self.key = key
        self.default = default
        self.parse = parse
        self.help = help


OPTIONS = [
    Option("grid.halfwidth", "60", _positive, "domain is [-halfwidth, halfwidth]"),
    Option("grid.dx", "0.02", _positive, "grid spacing"),
    Option("grid.boundary_tol", "1e-10", _non_negative, "boundary deviation allowed"),
    Option("evolve.dt", "0.01", _positive, "time step"),
    Option("evolve.cfl_guard", "0.5", _positive, "largest dt / dx"),
    Option("evolve.diag_stride", "10", _count, "steps between diagnostics"),
    Option("run.t_end", "auto", _t_end, "final time; auto is 1/eps (20 for eps = 0)"),
    Option("run.eps", "0.1", _non_negative, "forcing scale eps"),
    Option("forcing.family", "gaussian", _choice(FAMILIES), "forcing profile"),
    Option("forcing.amplitude", "1.0", _float, "f(0)"),
    Option("forcing.width", "1.0", _positive, "profile width"),
    Option("initial.xi", "0.0", _float, "initial kink centre"),
    Option("initial.u", "0.2", _float, "initial kink velocity"),
    Option("window.U", "0.5", _positive, "velocity window U"),
    Option("perturbation.kind", "none", _choice(PERTURBATIONS), "initial transversal data"),
    Option("perturbation.seed", "0", _seed, "seed of the random perturbation"),
    Option("decompose.tol", "1e-10", _positive, "orthogonality tolerance"),
    Option("decompose.max_iter", "25", _count, "Newton iteration limit"),
    Option("sweep.eps", "0.2,0.1,0.05", _eps_list, "eps values of a sweep"),
    Option("ode.c_bar", "1.0", _non_negative, "injection cap factor for ode-compare"),
    Option("ode.dt", "0.001", _positive, "RK4 step in rescaled time"),
]

_OPTIONS_BY_KEY = {option.key: option for option in OPTIONS}

DEFAULTS = {option.key: option.default for option in OPTIONS}

# t_end used when eps = 0 and run.t_end is auto
UNFORCED_T_END = 20.0


def _set(values: Dict[str, str], key: str, text: str) -> None:
    option = _OPTIONS_BY_KEY.get(key)
    if option is None:
        raise ConfigError(key, "unknown configuration key")
    try:
        option.parse(text)
    except ValueError as e:
        raise ConfigError(key, "invalid value %r (%s)" % (text, e))
    values[key] = text


def parse_config(text: str, source: str = "<config>") -> Dict[str, str]:
    """Parse configuration text on top of the defaults."""
    values = dict(DEFAULTS)
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("%s:%d" % (source, lineno), "expected key = value")
        key, value = line.split("=", 1)
        _set(values, key.strip(), value.strip())
    return values


def load_config(path: Optional[str] = None) -> Dict[str, str]:
    """Read a configuration file; the defaults when path is None."""
    if path is None:
        return dict(DEFAULTS)
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(path, "unable to read: %s" % e.strerror)
    return parse_config(text, path)


def apply_overrides(values: Dict[str, str], overrides: Iterable[str]) -> Dict[str, str]:
    """Apply KEY=VALUE overrides in order; the last one for a key wins."""
    values = dict(values)
    for override in overrides:
        if "=" not in override:
            raise ConfigError(override, "override must have the form KEY=VALUE")
        key, value = override.split("=", 1)
        _set(values, key.strip(), value.strip())
    return values


def resolve(values: Dict[str, str]) -> Dict[str, object]:
    """Typed values for every key."""
    resolved = {key: _OPTIONS_BY_KEY[key].parse(text) for key, text in values.items()}
    if resolved["run.t_end"] is None:
        eps = resolved["run.eps"]
        resolved["run.t_end"] = 1.0 / eps if eps > 0 else UNFORCED_T_END
    return resolved


def format_config(values: Dict[str, str]) -> str:
    """The configuration in file format, one line per key."""
    lines = []
    for option in OPTIONS:
        lines.append("# %s" % option.help)
        lines.append("%s = %s" % (option.key, values[option.key]))
    return "\n".join(lines) + "\n"


def run_config(values: Dict[str, str]) -> RunConfig:
    """Build a RunConfig from configuration values.

    :raise ConfigError: if the values do not make a valid run
    """
    r = resolve(values)
    try:
        return RunConfig(
            EvolveConfig(
                r["evolve.dt"],
                r["run.t_end"],
                r["evolve.diag_stride"],
                r["evolve.cfl_guard"],
            ),
            ForcingProfile(
                r["forcing.family"],
                r["forcing.amplitude"],
                r["forcing.width"],
                r["run.eps"],
            ),
            halfwidth=r["grid.halfwidth"],
            dx=r["grid.dx"],
            xi_s=r["initial.xi"],
            u_s=r["initial.u"],
            window=ParamWindow(r["window.U"]),
            perturbation=r["perturbation.kind"],
            seed=r["perturbation.seed"],
            boundary_tol=r["grid.boundary_tol"],
            decompose_tol=r["decompose.tol"],
            decompose_max_iter=r["decompose.max_iter"],
            ode_dt=r["ode.dt"],
        )
    except ValueError as e:
        raise ConfigError("run", str(e))
