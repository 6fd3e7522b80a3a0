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

"""Named numerical checks run by ``kinklab verify``.

Every check returns whether it passed and a one line description of what
was measured. Checks marked slow take more than a minute.
"""

import collections
import logging
import math
import time
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from .evolution import EvolveConfig, ForcingProfile
from .functionals import e_functional, lyapunov, lyapunov_rate, project_n2, remainder
from .grid import Field, Grid, derivative, h1_norm, l2_norm
from .harness import RunConfig, fit_scaling, run_experiment, sweep
from .kink import (
    ParamWindow,
    SolitonParams,
    default_kink_constants,
    gamma,
    kink,
    kink_constants,
    kink_d1,
    soliton_pair,
)
from .modulation import (
    GronwallSpec,
    corrected_system,
    exact_system,
    gronwall_compare,
    rescaled_ode_rhs,
    rk4_integrate,
)
from .symplectic import Decomposition, n_jacobian


logger = logging.getLogger(__name__)


Outcome = Tuple[bool, str]


class Check(object):

    def __init__(self, name: str, description: str, func: Callable[[], Outcome], slow=False):
        self.name = name
        self.description = description
        self.func = func
        self.slow = slow


class CheckResult(object):

    def __init__(self, name: str, passed: bool, detail: str, elapsed: float) -> None:
        self.name = name
        self.passed = passed
        self.detail = detail
        self.elapsed = elapsed

    def __repr__(self):
        return "%s(%r, passed=%r)" % (type(self).__name__, self.name, self.passed)


def _random_pair(rng: np.random.Generator, g: Grid, centre: float) -> Tuple[Field, Field]:
    def bumps():
        values = np.zeros(g.n)
        for _ in range(3):
            offset = rng.uniform(-8.0, 8.0)
            width = rng.uniform(0.5, 3.0)
            values += rng.normal() * np.exp(-(((g.x - centre - offset) / width) ** 2))
        return Field(g, values)

    return bumps(), bumps()


def check_kink_constants() -> Outcome:
    kc = kink_constants()
    i2_oracle = quad(lambda z: z * z * float(kink_d1(z)), -np.inf, np.inf, limit=200)[0]
    m_err = abs(kc.m - 8.0)
    i1_err = abs(kc.i1 - 2.0 * math.pi)
    i2_err = abs(kc.i2 - i2_oracle)
    return (
        m_err <= 1e-9 and i1_err <= 1e-10 and i2_err <= 1e-8,
        "|m-8|=%.2e |i1-2pi|=%.2e |i2-quad|=%.2e" % (m_err, i1_err, i2_err),
    )


def check_jacobian() -> Outcome:
    g = Grid.symmetric(40.0, 0.01)
    m = default_kink_constants().m
    worst = 0.0
    for u in np.linspace(-0.6, 0.6, 9):
        p = SolitonParams(0.0, u)
        entry = gamma(u) ** 3 * m
        expected = np.array([[0.0, entry], [-entry, 0.0]])
        worst = max(worst, float(np.max(np.abs(n_jacobian(soliton_pair(p, g), p) - expected))))
    return worst <= 1e-6, "max entry error %.2e over 9 velocities" % worst


def _free_run(dx: float, dt: float):
    cfg = RunConfig(
        EvolveConfig(dt, 20.0, int(round(0.1 / dt))),
        ForcingProfile("zero"),
        halfwidth=60.0,
        dx=dx,
        xi_s=0.0,
        u_s=0.3,
    )
    return run_experiment(cfg)


def check_free_soliton() -> Outcome:
    result = _free_run(0.02, 0.01)
    final = result.records[-1]
    xi_err = abs(final.xi - 6.0)
    u_err = float(np.max(np.abs(result.column("u") - 0.3)))
    summary = result.summary()
    energies = result.column("energy")
    momenta = result.column("momentum")
    energy_drift = summary["energy_drift"] / abs(energies[0])
    momentum_drift = summary["momentum_drift"] / abs(momenta[0])
    passed = (
        abs(final.t - 20.0) < 1e-9
        and xi_err <= 5e-3
        and u_err <= 1e-4
        and summary["sup_budget"] <= 1e-6
        and energy_drift <= 1e-5
        and momentum_drift <= 1e-5
    )
    return passed, (
        "|xi(20)-6|=%.2e max|u-0.3|=%.2e sup budget=%.2e "
        "energy drift=%.2e momentum drift=%.2e"
        % (xi_err, u_err, summary["sup_budget"], energy_drift, momentum_drift)
    )


def check_convergence_order() -> Outcome:
    coarse = abs(_free_run(0.02, 0.01).records[-1].xi - 6.0)
    fine = abs(_free_run(0.01, 0.005).records[-1].xi - 6.0)
    ratio = coarse / fine if fine > 0 else math.inf
    return 3.0 <= ratio <= 5.0, "error ratio %.3f (%.2e -> %.2e)" % (ratio, coarse, fine)


def check_lyapunov_identity() -> Outcome:
    rng = np.random.default_rng(2)
    g = Grid.symmetric(30.0, 0.02)
    worst_identity = 0.0
    for _ in range(50):
        p = SolitonParams(rng.uniform(-2.0, 2.0), rng.uniform(-0.7, 0.7))
        v, w = _random_pair(rng, g, p.xi)
        d = Decomposition(p, v, w, 0, 0.0)
        worst_identity = max(worst_identity, abs(lyapunov(d) - e_functional(d)))
    min_ratio = math.inf
    for _ in range(100):
        p = SolitonParams(rng.uniform(-2.0, 2.0), rng.uniform(-0.5, 0.5))
        v, w = project_n2(*_random_pair(rng, g, p.xi), p)
        d = Decomposition(p, v, w, 0, 0.0)
        ratio = e_functional(d) / (h1_norm(v) ** 2 + l2_norm(w) ** 2)
        min_ratio = min(min_ratio, ratio)
    return (
        worst_identity <= 1e-10 and min_ratio >= 0.01,
        "max |L-E|=%.2e, min E/(|v|^2+|w|^2)=%.4f" % (worst_identity, min_ratio),
    )


def check_lyapunov_rate() -> Outcome:
    dt = 0.005
    cfg = RunConfig(
        EvolveConfig(dt, 5.0, 1, 0.5),
        ForcingProfile("gaussian", 1.0, 1.0, 0.1),
        halfwidth=40.0,
        dx=0.02,
        u_s=0.2,
        perturbation="bump",
    )
    fp = cfg.forcing
    window = collections.deque(maxlen=3)
    worst = [0.0, 0.0]

    def on_sample(t, s, d):
        window.append((t, d, lyapunov(d)))
        if len(window) < 3:
            return
        (t0, d0, l0), (t1, d1, _), (t2, d2, l2) = window
        if t1 < 1.0:
            return
        span = t2 - t0
        rates = (
            (d2.params.xi - d0.params.xi) / span,
            (d2.params.u - d0.params.u) / span,
        )
        observed = (l2 - l0) / span
        worst[0] = max(worst[0], abs(lyapunov_rate(d1, rates, fp) - observed))
        worst[1] = max(worst[1], abs(observed))

    run_experiment(cfg, on_sample=on_sample)
    relative = worst[0] / worst[1] if worst[1] > 0 else math.inf
    return relative <= 0.05, "max rate error %.2e relative to max |dL/dt| %.2e (%.3f)" % (
        worst[0],
        worst[1],
        relative,
    )


def _forced_sweep_config() -> RunConfig:
    return RunConfig(
        EvolveConfig(0.01, 5.0, 10, 0.5),
        ForcingProfile("gaussian", 1.0, 1.0, 0.2),
        u_s=0.2,
        window=ParamWindow(0.5),
    )


def check_sweep() -> Outcome:
    result = sweep(_forced_sweep_config(), [0.2, 0.1, 0.05])
    parts = []
    for name, flags in sorted(result.flags.items()):
        fit = result.fits[name]
        if fit is None:
            parts.append("%s floor-limited" % name)
        else:
            parts.append(
                "%s exponent %.2f (spread %.2f)"
                % (name, fit.exponent, flags["constant_spread"])
            )
    return result.passed, "; ".join(parts)


def check_gronwall() -> Outcome:
    kc = default_kink_constants()
    scaled = []
    for eps in (0.2, 0.1, 0.05):
        fp = ForcingProfile("gaussian", 1.0, 1.0, eps)
        xi_gap, u_gap = gronwall_compare(GronwallSpec.capped(eps), fp, kc, (0.0, 1.0))
        scaled.append(max(xi_gap, u_gap) / eps ** 0.75)
    variation = max(scaled) / min(scaled) - 1.0
    return variation <= 0.2, "gap / eps^(3/4) = %s, variation %.3f" % (
        ", ".join("%.4f" % s for s in scaled),
        variation,
    )


def check_nontrivial_limit() -> Outcome:
    kc = default_kink_constants()
    fp = ForcingProfile("gaussian", 1.0, 1.0, 0.05)
    u_hat_dot = rescaled_ode_rhs((0.0, 1.0), fp, kc)[1]
    err = abs(u_hat_dot + math.pi / 4.0)
    return err <= 0.02, "uhat'(0) = %.6f, distance to -pi/4 %.2e" % (u_hat_dot, err)


def check_derivative_order() -> Outcome:
    errors = []
    for dx in (0.02, 0.01):
        g = Grid(0.0, dx, int(round(2.0 / dx)) + 1)
        error = derivative(g.sample(np.sin)).values - np.cos(g.x)
        errors.append(float(np.max(np.abs(error[1:-1]))))
    ratio = errors[0] / errors[1]
    return 3.5 <= ratio <= 4.5, "error ratio %.3f on halving dx" % ratio


def check_remainder_order() -> Outcome:
    g = Grid.symmetric(20.0, 0.01)
    theta0 = g.sample(kink)
    bump = 0.1 * np.exp(-g.x ** 2)
    scales = [1.0, 0.5, 0.25, 0.125]
    pairs = [(s, l2_norm(remainder(Field(g, s * bump), theta0))) for s in scales]
    slope = fit_scaling(pairs).exponent
    return abs(slope - 3.0) <= 0.1, "remainder order %.3f" % slope


def check_corrected_gap() -> Outcome:
    kc = default_kink_constants()
    pairs = []
    for eps in (0.2, 0.1, 0.05, 0.025):
        fp = ForcingProfile("gaussian", 1.0, 1.0, eps)
        dt = min(1e-3, eps / 10.0)
        y0 = (-1.0 / eps, 0.2)
        exact = rk4_integrate(exact_system(fp, kc), y0, 0.0, 1.0 / eps, dt)
        corrected = rk4_integrate(corrected_system(fp, kc), y0, 0.0, 1.0 / eps, dt)
        pairs.append((eps, float(np.max(np.abs(exact.xi - corrected.xi)))))
    slope = fit_scaling(pairs).exponent
    return slope >= 1.9, "exact vs corrected gap exponent %.3f" % slope


CHECKS = [
    Check("kink-constants", "kink integrals against adaptive quadrature", check_kink_constants),
    Check("jacobian", "orthogonality Jacobian on the manifold", check_jacobian),
    Check("derivative-order", "second order finite differences", check_derivative_order),
    Check("remainder-order", "cubic Taylor remainder", check_remainder_order),
    Check("lyapunov-identity", "L = E and the coercivity bound", check_lyapunov_identity),
    Check("gronwall", "injected modulation gaps scale as eps^(3/4)", check_gronwall),
    Check("nontrivial-limit", "rescaled acceleration tends to -pi/4", check_nontrivial_limit),
    Check("corrected-gap", "exact and corrected modulation equations", check_corrected_gap),
    Check("free-soliton", "free kink tracking and conservation", check_free_soliton, slow=True),
    Check(
        "convergence-order",
        "second order of the PDE solver",
        check_convergence_order,
        slow=True,
    ),
    Check("lyapunov-rate", "dL/dt against time differences", check_lyapunov_rate, slow=True),
    Check("sweep", "residual, gap and norm scaling in eps", check_sweep, slow=True),
]


def run_checks(
    skip_slow: bool = False, names: Optional[Sequence[str]] = None
) -> List[CheckResult]:
    """Run the selected checks in order.

    :param skip_slow: leave out checks marked slow
    :param names: only run these checks
    :raise KeyError: for an unknown check name
    """
    known = {check.name: check for check in CHECKS}
    if names:
        selected = [known[name] for name in names]
    else:
        selected = list(CHECKS)
    results = []
    for check in selected:
        if skip_slow and check.slow:
            logger.info("skipping slow check %s", check.name)
            continue
        logger.info("running %s: %s", check.name, check.description)
        started = time.time()
        try:
            passed, detail = check.func()
        except Exception as e:
            logger.exception("check %s raised", check.name)
            passed, detail = False, "raised %s: %s" % (type(e).__name__, e)
        results.append(CheckResult(check.name, bool(passed), detail, time.time() - started))
    return results
