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

"""Experiment orchestration: runs, parameter sweeps and scaling fits."""

import csv
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, IO, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from . import version_string
from .evolution import (
    EvolveConfig,
    FieldBlowUp,
    ForcingProfile,
    evolve,
    forcing_field,
)
from .functionals import energy, e_functional, lyapunov, momentum
from .grid import Field, Grid, State, h1_norm, l2_norm
from .kink import ParamWindow, SolitonParams, default_kink_constants, soliton_pair
from .modulation import modulation_trajectory, w_drift
from .symplectic import (
    Decomposition,
    DecompositionError,
    WindowExit,
    decompose,
    omega_orthogonalize,
    parameter_rates,
)


logger = logging.getLogger(__name__)


PERTURBATIONS = ("none", "bump")

# Exponent of the transversal budget at t = 0.
BUDGET_EXPONENT = 11.0 / 4.0

# A run ends at the first record whose velocity leaves this window level.
EXIT_LEVEL = 4

COLUMNS = (
    "t",
    "xi",
    "u",
    "v_h1",
    "w_l2",
    "L",
    "E",
    "N1",
    "N2",
    "xi_dot_res",
    "u_dot_res",
    "xi_gap",
    "u_gap",
    "energy",
    "momentum",
    "newton_iters",
)


class InvalidRunConfig(ValueError):
    """The run configuration violates a standing assumption."""


class DomainTooSmall(Exception):
    """The fields reached the edge of the truncated domain."""

    def __init__(self, t, deviation):
        self.t = t
        self.deviation = deviation
        super(DomainTooSmall, self).__init__(
            "boundary deviation %g at t=%g; enlarge grid.halfwidth" % (deviation, t)
        )


class RunFailed(Exception):
    """A run stopped on a blow-up or a failed decomposition."""

    def __init__(self, eps, t, cause):
        self.eps = eps
        self.t = t
        self.cause = cause
        super(RunFailed, self).__init__("run at eps=%g failed at t=%g: %s" % (eps, t, cause))


class DegenerateFit(ValueError):
    """Too few, repeated or non-positive data points for a power-law fit."""


class RunConfig(object):
    """Everything that determines one run."""

    def __init__(
        self,
        evolve: EvolveConfig,
        forcing: ForcingProfile,
        halfwidth: float = 60.0,
        dx: float = 0.02,
        xi_s: float = 0.0,
        u_s: float = 0.2,
        window: Optional[ParamWindow] = None,
        perturbation: str = "none",
        seed: int = 0,
        boundary_tol: float = 1e-10,
        decompose_tol: float = 1e-10,
        decompose_max_iter: int = 25,
        ode_dt: float = 1e-3,
    ) -> None:
        if window is None:
            window = ParamWindow(0.5)
        if not abs(u_s) < window.U:
            raise InvalidRunConfig(
                "initial velocity %r outside (-U, U) with U=%r" % (u_s, window.U)
            )
        eps = forcing.epsilon
        if eps > 0 and evolve.t_end > (1.0 / eps) * (1.0 + 1e-12):
            raise InvalidRunConfig(
                "t_end=%r exceeds 1/eps=%r" % (evolve.t_end, 1.0 / eps)
            )
        if perturbation not in PERTURBATIONS:
            raise InvalidRunConfig(
                "unknown perturbation %r (expected one of %s)"
                % (perturbation, ", ".join(PERTURBATIONS))
            )
        self.evolve = evolve
        self.forcing = forcing
        self.halfwidth = float(halfwidth)
        self.dx = float(dx)
        self.xi_s = float(xi_s)
        self.u_s = float(u_s)
        self.window = window
        self.perturbation = perturbation
        self.seed = int(seed)
        self.boundary_tol = float(boundary_tol)
        self.decompose_tol = float(decompose_tol)
        self.decompose_max_iter = int(decompose_max_iter)
        self.ode_dt = float(ode_dt)
        evolve.check_cfl(self.grid)

    @property
    def epsilon(self) -> float:
        return self.forcing.epsilon

    @property
    def grid(self) -> Grid:
        return Grid.symmetric(self.halfwidth, self.dx)

    @property
    def initial_params(self) -> SolitonParams:
        return SolitonParams(self.xi_s, self.u_s)

    def with_epsilon(self, eps: float, unforced: bool = False) -> "RunConfig":
        """The same configuration at another eps, run to t_end = 1/eps.

        With unforced, the forcing and the perturbation are switched off,
        leaving the free kink on the same grid.
        """
        evolve_cfg = EvolveConfig(
            self.evolve.dt, 1.0 / eps, self.evolve.diag_stride, self.evolve.cfl_guard
        )
        forcing = self.forcing.with_epsilon(eps)
        if unforced:
            forcing = ForcingProfile("zero", epsilon=eps)
        return RunConfig(
            evolve_cfg,
            forcing,
            halfwidth=self.halfwidth,
            dx=self.dx,
            xi_s=self.xi_s,
            u_s=self.u_s,
            window=self.window,
            perturbation="none" if unforced else self.perturbation,
            seed=self.seed,
            boundary_tol=self.boundary_tol,
            decompose_tol=self.decompose_tol,
            decompose_max_iter=self.decompose_max_iter,
            ode_dt=self.ode_dt,
        )

    def as_dict(self) -> Dict[str, object]:
        return {
            "grid.halfwidth": self.halfwidth,
            "grid.dx": self.dx,
            "grid.boundary_tol": self.boundary_tol,
            "evolve.dt": self.evolve.dt,
            "evolve.cfl_guard": self.evolve.cfl_guard,
            "evolve.diag_stride": self.evolve.diag_stride,
            "run.t_end": self.evolve.t_end,
            "run.eps": self.forcing.epsilon,
            "forcing.family": self.forcing.family,
            "forcing.amplitude": self.forcing.amplitude,
            "forcing.width": self.forcing.width,
            "initial.xi": self.xi_s,
            "initial.u": self.u_s,
            "window.U": self.window.U,
            "perturbation.kind": self.perturbation,
            "perturbation.seed": self.seed,
            "decompose.tol": self.decompose_tol,
            "decompose.max_iter": self.decompose_max_iter,
            "ode.dt": self.ode_dt,
        }

    def __repr__(self):
        return "%s(eps=%r, t_end=%r, u_s=%r)" % (
            type(self).__name__,
            self.epsilon,
            self.evolve.t_end,
            self.u_s,
        )


def transversal_budget(v: Field, w: Field) -> float:
    """||v||_H1^2 + ||w||_L2^2."""
    return h1_norm(v) ** 2 + l2_norm(w) ** 2


def _random_bumps(rng: np.random.Generator, g: Grid, centre: float) -> np.ndarray:
    values = np.zeros(g.n)
    for _ in range(3):
        amplitude = rng.normal()
        offset = rng.uniform(-10.0, 10.0)
        width = rng.uniform(1.0, 3.0)
        values += amplitude * np.exp(-(((g.x - centre - offset) / width) ** 2))
    return values


def make_initial_state(cfg: RunConfig) -> State:
    """The kink at (xi_s, u_s), plus the configured transversal perturbation.

    A "bump" perturbation is a seeded sum of gaussians in v and w, made
    orthogonal to both tangent vectors and scaled to the budget eps^(11/4).
    """
    g = cfg.grid
    p = cfg.initial_params
    base = soliton_pair(p, g)
    if cfg.perturbation == "none" or cfg.epsilon == 0:
        return base
    rng = np.random.default_rng(cfg.seed)
    v = Field(g, _random_bumps(rng, g, p.xi))
    w = Field(g, _random_bumps(rng, g, p.xi))
    v, w = omega_orthogonalize(v, w, p)
    budget = transversal_budget(v, w)
    if not budget > 0:
        raise InvalidRunConfig("perturbation vanished after orthogonalisation")
    factor = math.sqrt(cfg.epsilon ** BUDGET_EXPONENT / budget)
    return State(base.theta + factor * v, base.psi + factor * w)


class DiagnosticsRecord(object):
    """Diagnostics of one decomposed snapshot; attributes follow COLUMNS."""

    __slots__ = COLUMNS

    def __init__(self, **kwargs) -> None:
        missing = set(COLUMNS) - set(kwargs)
        if missing:
            raise TypeError("missing diagnostics: %s" % ", ".join(sorted(missing)))
        for name in COLUMNS:
            setattr(self, name, kwargs.pop(name))
        if kwargs:
            raise TypeError("unknown diagnostics: %s" % ", ".join(sorted(kwargs)))

    def as_row(self) -> List[object]:
        return [getattr(self, name) for name in COLUMNS]

    def as_dict(self) -> Dict[str, object]:
        return dict(zip(COLUMNS, self.as_row()))

    def __repr__(self):
        return "%s(t=%r, xi=%r, u=%r)" % (type(self).__name__, self.t, self.xi, self.u)


class RunResult(object):
    """Records of a run, its exit time (if any) and its wall clock time."""

    def __init__(
        self,
        config: RunConfig,
        records: List[DiagnosticsRecord],
        exit_time: Optional[float],
        wall_clock: float,
    ) -> None:
        self.config = config
        self.records = records
        self.exit_time = exit_time
        self.wall_clock = wall_clock

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    def summary(self) -> Dict[str, object]:
        """Sup statistics over the records."""
        if not self.records:
            return {"records": 0, "exit_time": self.exit_time}
        window = self.config.window
        u = self.column("u")
        budget = self.column("v_h1") ** 2 + self.column("w_l2") ** 2
        ret = {
            "records": len(self.records),
            "t_final": self.records[-1].t,
            "exit_time": self.exit_time,
            "sup_budget": float(np.max(budget)),
            "budget_initial": float(budget[0]),
            "sup_L": float(np.max(np.abs(self.column("L")))),
            "sup_orthogonality": float(
                max(np.max(np.abs(self.column("N1"))), np.max(np.abs(self.column("N2"))))
            ),
            "u_min": float(np.min(u)),
            "u_max": float(np.max(u)),
            "in_window_5": bool(np.all(np.abs(u) < window.bound(5))),
            "newton_iters_max": int(np.max(self.column("newton_iters"))),
        }
        for name in ("xi_dot_res", "u_dot_res", "xi_gap", "u_gap"):
            ret["sup_" + name] = float(np.max(self.column(name)))
        energies = self.column("energy")
        momenta = self.column("momentum")
        ret["energy_drift"] = float(np.max(np.abs(energies - energies[0])))
        ret["momentum_drift"] = float(np.max(np.abs(momenta - momenta[0])))
        return ret


def check_boundary(s: State, force: Field, tol: float, t: float) -> float:
    """Deviation of theta from its end values at the first interior nodes.

    Both end nodes are pinned, so the first node inside each end is
    compared with them. A forced vacuum oscillates about F with amplitude
    |F|, which the allowance absorbs.

    :raise DomainTooSmall: if a deviation exceeds tol + 2.5 |F|
    :return: the larger of the two deviations
    """
    theta = s.theta.values
    forcing = force.values
    worst = 0.0
    for inner_node, end_node in ((1, 0), (-2, -1)):
        deviation = abs(theta[inner_node] - theta[end_node])
        allowance = tol + 2.5 * abs(forcing[inner_node])
        if deviation > allowance:
            logger.warning(
                "boundary deviation %g exceeds %g at t=%g", deviation, allowance, t
            )
            raise DomainTooSmall(t, deviation)
        worst = max(worst, deviation)
    return worst


SampleCallback = Callable[[float, State, Decomposition], None]


class _Sample(object):

    __slots__ = ("t", "d", "values", "rates")

    def __init__(self, t, d, values, rates):
        self.t = t
        self.d = d
        self.values = values
        self.rates = rates


def _estimate_rates(samples: Sequence[_Sample]) -> List[Tuple[float, float]]:
    """Centred differences inside the series, instantaneous rates at its ends."""
    rates = []
    for k, sample in enumerate(samples):
        if 0 < k < len(samples) - 1:
            before = samples[k - 1]
            after = samples[k + 1]
            span = after.t - before.t
            rates.append(
                (
                    (after.d.params.xi - before.d.params.xi) / span,
                    (after.d.params.u - before.d.params.u) / span,
                )
            )
        else:
            rates.append(sample.rates)
    return rates


def run_experiment(
    cfg: RunConfig, on_sample: Optional[SampleCallback] = None
) -> RunResult:
    """Evolve, decompose at every diagnostic time and collect diagnostics.

    :param cfg: run configuration
    :param on_sample: optional callback called as on_sample(t, state,
        decomposition) for every diagnostic time
    :raise DomainTooSmall: if the fields reach the edge of the domain
    :raise RunFailed: on blow-up or a failed decomposition
    :return: RunResult; its exit_time is the time of the first record
        outside the level-4 window, or of a decomposition that could not
        stay inside the level-2 window, and the run stops there
    """
    started = time.time()
    g = cfg.grid
    fp = cfg.forcing
    kc = default_kink_constants()
    force = forcing_field(fp, g)
    reference = modulation_trajectory(
        fp, kc, (cfg.xi_s, cfg.u_s), cfg.evolve.t_end, cfg.ode_dt
    )
    logger.info("run eps=%g t_end=%g on %r", cfg.epsilon, cfg.evolve.t_end, g)
    samples: List[_Sample] = []
    progress = {"t": 0.0, "guess": cfg.initial_params}

    def observe(t: float, s: State) -> None:
        progress["t"] = t
        check_boundary(s, force, cfg.boundary_tol, t)
        d = decompose(
            s,
            progress["guess"],
            cfg.window,
            tol=cfg.decompose_tol,
            max_iter=cfg.decompose_max_iter,
        )
        progress["guess"] = d.params
        values = {
            "t": t,
            "xi": d.params.xi,
            "u": d.params.u,
            "v_h1": h1_norm(d.v),
            "w_l2": l2_norm(d.w),
            "L": lyapunov(d),
            "E": e_functional(d),
            "N1": d.residuals[0],
            "N2": d.residuals[1],
            "energy": energy(s),
            "momentum": momentum(s),
            "newton_iters": d.newton_iterations,
        }
        samples.append(_Sample(t, d, values, parameter_rates(s, d.params, force)))
        if on_sample is not None:
            on_sample(t, s, d)
        if not cfg.window.contains(d.params, EXIT_LEVEL):
            raise WindowExit(d.params, cfg.window.at(EXIT_LEVEL))

    exit_time = None
    try:
        evolve(make_initial_state(cfg), fp, cfg.evolve, observe)
    except WindowExit as e:
        exit_time = progress["t"]
        logger.info("exit time %g: %s", exit_time, e)
    except (FieldBlowUp, DecompositionError) as e:
        raise RunFailed(cfg.epsilon, progress["t"], e)

    records = []
    for sample, (xi_dot, u_dot) in zip(samples, _estimate_rates(samples)):
        p = sample.d.params
        xi_bar, u_bar = reference.at(sample.t)
        values = dict(sample.values)
        values["xi_dot_res"] = abs(xi_dot - p.u)
        values["u_dot_res"] = abs(u_dot + w_drift(fp, p, kc))
        values["xi_gap"] = abs(p.xi - xi_bar)
        values["u_gap"] = abs(p.u - u_bar)
        records.append(DiagnosticsRecord(**values))
    wall_clock = time.time() - started
    logger.info(
        "run eps=%g finished: %d records in %.1fs", cfg.epsilon, len(records), wall_clock
    )
    return RunResult(cfg, records, exit_time, wall_clock)


class ScalingFit(object):
    """value ~ constant * eps^exponent."""

    def __init__(self, exponent: float, stderr: float, constant: float) -> None:
        self.exponent = exponent
        self.stderr = stderr
        self.constant = constant

    def as_dict(self) -> Dict[str, float]:
        return {
            "exponent": self.exponent,
            "stderr": self.stderr,
            "constant": self.constant,
        }

    def __iter__(self):
        return iter((self.exponent, self.stderr, self.constant))

    def __repr__(self):
        return "%s(exponent=%r, stderr=%r, constant=%r)" % (
            type(self).__name__,
            self.exponent,
            self.stderr,
            self.constant,
        )


def fit_scaling(pairs: Sequence[Tuple[float, float]]) -> ScalingFit:
    """Least squares fit of log(value) against log(eps).

    :param pairs: (eps, value) pairs, at least three, all positive and
        with distinct eps
    :raise DegenerateFit: if the data cannot determine a power law
    """
    if len(pairs) < 3:
        raise DegenerateFit("need at least 3 points, got %d" % len(pairs))
    eps = np.array([e for e, _ in pairs], dtype=float)
    values = np.array([v for _, v in pairs], dtype=float)
    if np.any(eps <= 0) or np.any(values <= 0):
        raise DegenerateFit("power-law fit needs positive eps and values")
    if len(np.unique(eps)) != len(eps):
        raise DegenerateFit("repeated eps values in %r" % (list(eps),))
    fit = linregress(np.log(eps), np.log(values))
    return ScalingFit(float(fit.slope), float(fit.stderr), float(math.exp(fit.intercept)))


class ScalingLaw(object):
    """A sup quantity, the exponent it is bounded with and the fit check."""

    def __init__(
        self,
        name: str,
        exponent: float,
        floor: float,
        min_exponent: Optional[float] = None,
        stable_constant: bool = True,
    ) -> None:
        self.name = name
        self.exponent = exponent
        self.floor = floor
        self.min_exponent = min_exponent
        self.stable_constant = stable_constant


SCALING_LAWS = (
    ScalingLaw("sup_budget", 1.5, 1e-12, min_exponent=1.4),
    ScalingLaw("sup_xi_gap", 0.75, 1e-7, min_exponent=0.7),
    ScalingLaw("sup_u_gap", 1.75, 1e-8, stable_constant=False),
    ScalingLaw("sup_xi_dot_res", 2.75, 1e-9),
    ScalingLaw("sup_u_dot_res", 2.75, 1e-9),
)

# Largest growth of the measured constant from one eps to the next smaller
# one that still counts as a stable bound.
CONSTANT_SPREAD = 0.5

# Values within this factor of the unforced run's value are floor-limited.
FLOOR_FACTOR = 4.0


class SweepResult(object):
    """Per-eps summaries, fitted exponents and pass flags of a sweep."""

    def __init__(
        self,
        eps_list: List[float],
        summaries: List[Dict[str, object]],
        fits: Dict[str, Optional[ScalingFit]],
        constants: Dict[str, List[float]],
        flags: Dict[str, Dict[str, object]],
        floors: Optional[Dict[str, float]] = None,
    ) -> None:
        self.eps_list = eps_list
        self.summaries = summaries
        self.fits = fits
        self.constants = constants
        self.flags = flags
        self.floors = floors or {}

    @property
    def passed(self) -> bool:
        return all(f.get("passed", True) for f in self.flags.values())

    def as_dict(self) -> Dict[str, object]:
        return {
            "eps": self.eps_list,
            "summaries": self.summaries,
            "fits": {
                name: (fit.as_dict() if fit is not None else None)
                for name, fit in self.fits.items()
            },
            "constants": self.constants,
            "floors": self.floors,
            "flags": self.flags,
            "passed": self.passed,
        }


def sweep_workers() -> int:
    """Worker processes for a sweep, capped by KINKLAB_THREADS."""
    value = os.environ.get("KINKLAB_THREADS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning("ignoring invalid KINKLAB_THREADS=%r", value)
    return os.cpu_count() or 1


def _run_member(cfg: RunConfig) -> RunResult:
    return run_experiment(cfg)


def bound_consistent(constants: Sequence[float]) -> bool:
    """Constants in order of decreasing eps never grow by more than CONSTANT_SPREAD."""
    return all(
        later <= (1.0 + CONSTANT_SPREAD) * earlier
        for earlier, later in zip(constants, constants[1:])
    )


def _assess(law: ScalingLaw, eps_list, values, forced: bool, floor: float = 0.0):
    """Fit one scaling law over a sweep.

    :param eps_list: eps values in decreasing order
    :param values: the sup quantity of each member
    :param forced: whether the sweep has a nonzero forcing
    :param floor: the same quantity from an unforced run on the same grid
    :return: (fit or None, constants, flags)
    """
    constants = [v / e ** law.exponent for e, v in zip(eps_list, values)]
    threshold = max(law.floor, FLOOR_FACTOR * floor)
    flags: Dict[str, object] = {
        "expected_exponent": law.exponent,
        "floor": threshold,
    }
    if not forced or any(not v > threshold for v in values):
        flags["floor_limited"] = True
        return None, constants, flags
    flags["floor_limited"] = False
    fit = fit_scaling(list(zip(eps_list, values)))
    passed = True
    if law.min_exponent is not None:
        flags["min_exponent"] = law.min_exponent
        flags["exponent_ok"] = bool(fit.exponent >= law.min_exponent)
        passed = passed and flags["exponent_ok"]
    flags["constant_spread"] = max(constants) / min(constants) - 1.0
    if law.stable_constant:
        # A fitted exponent above the bounding one means the constants shrink
        # with eps, which is consistent with the bound.
        flags["constant_stable"] = bool(
            fit.exponent >= law.exponent or bound_consistent(constants)
        )
        passed = passed and flags["constant_stable"]
    flags["passed"] = bool(passed)
    return fit, constants, flags


def sweep(
    base_cfg: RunConfig, eps_list: Sequence[float], workers: Optional[int] = None
) -> SweepResult:
    """Run base_cfg at every eps (each to t_end = 1/eps) and fit the sups.

    A forced sweep also runs the unforced, unperturbed kink to the longest
    t_end on the same grid; its sups are the discretization floor below
    which no exponent is fitted.

    :param base_cfg: configuration shared by all members
    :param eps_list: at least three distinct positive values
    :param workers: worker processes; defaults to sweep_workers()
    :raise InvalidRunConfig: for an unusable eps list
    :raise RunFailed: if any member run fails
    """
    eps_sorted = sorted((float(e) for e in eps_list), reverse=True)
    if len(eps_sorted) < 3 or len(set(eps_sorted)) != len(eps_sorted):
        raise InvalidRunConfig("a sweep needs at least 3 distinct eps values")
    if eps_sorted[-1] <= 0:
        raise InvalidRunConfig("sweep eps values must be positive")
    forced = not base_cfg.forcing.with_epsilon(1.0).is_zero
    configs = [base_cfg.with_epsilon(e) for e in eps_sorted]
    if forced:
        configs.append(base_cfg.with_epsilon(eps_sorted[-1], unforced=True))
    if workers is None:
        workers = sweep_workers()
    workers = min(workers, len(configs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_member, configs))
    else:
        results = [_run_member(cfg) for cfg in configs]
    floors: Dict[str, float] = {}
    if forced:
        floor_summary = results.pop().summary()
        floors = dict((law.name, float(floor_summary[law.name])) for law in SCALING_LAWS)
        logger.info("sweep floor run done")
    summaries = []
    for eps, result in zip(eps_sorted, results):
        summary = result.summary()
        summary["eps"] = eps
        summaries.append(summary)
        logger.info("sweep member eps=%g done", eps)
    fits: Dict[str, Optional[ScalingFit]] = {}
    constants: Dict[str, List[float]] = {}
    flags: Dict[str, Dict[str, object]] = {}
    for law in SCALING_LAWS:
        values = [float(s[law.name]) for s in summaries]
        fits[law.name], constants[law.name], flags[law.name] = _assess(
            law, eps_sorted, values, forced, floors.get(law.name, 0.0)
        )
    return SweepResult(eps_sorted, summaries, fits, constants, flags, floors)


def _format_value(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return "%.17g" % value


def write_csv(records: Sequence[DiagnosticsRecord], f: IO[str]) -> None:
    """One row per record, COLUMNS order, 17 significant digits."""
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(COLUMNS)
    for record in records:
        writer.writerow([_format_value(v) for v in record.as_row()])


def write_summary(result: RunResult, f: IO[str]) -> None:
    """JSON summary: configuration echo, sup statistics and run metadata."""
    json.dump(
        {
            "version": version_string,
            "config": result.config.as_dict(),
            "summary": result.summary(),
            "exited_window": result.exit_time is not None,
            "wall_clock": result.wall_clock,
        },
        f,
        indent=4,
        sort_keys=True,
    )
    f.write("\n")
