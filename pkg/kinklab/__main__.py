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

import argparse
import json
import logging
import os
import sys
from typing import Callable, Dict, List, Optional

from . import version_string
from .config import (
    ConfigError,
    apply_overrides,
    format_config,
    load_config,
    resolve,
    run_config,
)


def _config_parser(prog: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=prog)
    parser.add_argument("--config", type=str, help="Configuration file.", default=None)
    parser.add_argument(
        "--out", type=str, default=".", help="Directory to write results to."
    )
    parser.add_argument(
        "--set",
        type=str,
        action="append",
        default=[],
        dest="overrides",
        metavar="KEY=VALUE",
        help="Override a configuration key (may be repeated).",
    )
    parser.add_argument(
        "--print-config",
        action="store_true",
        help="Print the resolved configuration and exit.",
    )
    return parser


def _load(args) -> Dict[str, str]:
    return apply_overrides(load_config(args.config), args.overrides)


def _output_path(args, name: str) -> str:
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def simulate_main(argv: List[str]) -> Optional[int]:
    from .harness import DomainTooSmall, RunFailed, run_experiment, write_csv, write_summary

    parser = _config_parser("kinklab simulate")
    args = parser.parse_args(argv)
    values = _load(args)
    if args.print_config:
        sys.stdout.write(format_config(values))
        return 0
    cfg = run_config(values)
    try:
        result = run_experiment(cfg)
    except (DomainTooSmall, RunFailed) as e:
        logging.error("%s", e)
        return 1
    csv_path = _output_path(args, "diagnostics.csv")
    with open(csv_path, "w", newline="") as f:
        write_csv(result.records, f)
    with open(_output_path(args, "summary.json"), "w") as f:
        write_summary(result, f)
    logging.info("Wrote %d records to %s.", len(result.records), csv_path)
    if result.exit_time is not None:
        logging.info("Parameters left the window at t=%g.", result.exit_time)
    return 0


def sweep_main(argv: List[str]) -> Optional[int]:
    from .harness import DomainTooSmall, RunFailed, sweep

    parser = _config_parser("kinklab sweep")
    args = parser.parse_args(argv)
    values = _load(args)
    if args.print_config:
        sys.stdout.write(format_config(values))
        return 0
    eps_list = resolve(values)["sweep.eps"]
    base = run_config(apply_overrides(values, ["run.eps=%r" % max(eps_list), "run.t_end=auto"]))
    try:
        result = sweep(base, eps_list)
    except (DomainTooSmall, RunFailed) as e:
        logging.error("%s", e)
        return 1
    except ValueError as e:
        raise ConfigError("sweep.eps", str(e))
    with open(_output_path(args, "sweep.json"), "w") as f:
        json.dump(result.as_dict(), f, indent=4, sort_keys=True)
        f.write("\n")
    for name, fit in sorted(result.fits.items()):
        if fit is None:
            logging.info("%s: floor-limited", name)
        else:
            logging.info("%s: exponent %.3f +/- %.3f", name, fit.exponent, fit.stderr)
    return 0 if result.passed else 1


def verify_main(argv: List[str]) -> Optional[int]:
    from .verify import CHECKS, run_checks

    parser = argparse.ArgumentParser(prog="kinklab verify")
    parser.add_argument(
        "--skip-slow", action="store_true", help="Skip checks that take minutes."
    )
    parser.add_argument(
        "--check",
        type=str,
        action="append",
        default=[],
        choices=[check.name for check in CHECKS],
        help="Only run this check (may be repeated).",
    )
    args = parser.parse_args(argv)
    results = run_checks(skip_slow=args.skip_slow, names=args.check)
    for result in results:
        print(
            "%s %s: %s (%.1fs)"
            % ("PASS" if result.passed else "FAIL", result.name, result.detail, result.elapsed)
        )
    passed = sum(1 for result in results if result.passed)
    print("%d/%d checks passed" % (passed, len(results)))
    return 0 if passed == len(results) else 1


def ode_compare_main(argv: List[str]) -> Optional[int]:
    import numpy as np

    from .kink import default_kink_constants
    from .modulation import (
        GronwallSpec,
        corrected_system,
        exact_system,
        gronwall_compare,
        rk4_integrate,
    )

    parser = _config_parser("kinklab ode-compare")
    args = parser.parse_args(argv)
    values = _load(args)
    if args.print_config:
        sys.stdout.write(format_config(values))
        return 0
    r = resolve(values)
    cfg = run_config(values)
    eps = cfg.epsilon
    if not eps > 0:
        raise ConfigError("run.eps", "ode-compare needs eps > 0")
    kc = default_kink_constants()
    fp = cfg.forcing
    spec = GronwallSpec.capped(eps, r["ode.c_bar"])
    xi_gap, u_gap = gronwall_compare(spec, fp, kc, (cfg.xi_s, cfg.u_s / eps), cfg.ode_dt)
    y0 = (cfg.xi_s, cfg.u_s)
    dt = min(1e-3, eps / 10.0)
    exact = rk4_integrate(exact_system(fp, kc), y0, 0.0, cfg.evolve.t_end, dt)
    corrected = rk4_integrate(corrected_system(fp, kc), y0, 0.0, cfg.evolve.t_end, dt)
    report = {
        "eps": eps,
        "injection_cap": spec.bound,
        "gronwall_xi_gap": xi_gap,
        "gronwall_u_gap": u_gap,
        "gronwall_xi_gap_scaled": xi_gap / eps ** 0.75,
        "gronwall_u_gap_scaled": u_gap / eps ** 0.75,
        "t_end": cfg.evolve.t_end,
        "exact_final": list(exact.final),
        "corrected_final": list(corrected.final),
        "corrected_xi_gap": float(np.max(np.abs(exact.xi - corrected.xi))),
        "corrected_u_gap": float(np.max(np.abs(exact.u - corrected.u))),
    }
    with open(_output_path(args, "ode-compare.json"), "w") as f:
        json.dump(report, f, indent=4, sort_keys=True)
        f.write("\n")
    for key in sorted(report):
        print("%s: %s" % (key, report[key]))
    return 0


def constants_main(argv: List[str]) -> Optional[int]:
    from .kink import default_kink_constants

    parser = argparse.ArgumentParser(prog="kinklab constants")
    parser.parse_args(argv)
    kc = default_kink_constants()
    print("m = %.15g" % kc.m)
    print("i1 = %.15g" % kc.i1)
    print("i2 = %.15g" % kc.i2)
    return 0


subcommands: Dict[str, Callable[[List[str]], Optional[int]]] = {
    "constants": constants_main,
    "ode-compare": ode_compare_main,
    "simulate": simulate_main,
    "sweep": sweep_main,
    "verify": verify_main,
}


def parse_and_dispatch(argv: List[str]) -> int:
    """Run a subcommand; 0 on success, 1 for a failed check, 2 for usage errors."""
    parser = argparse.ArgumentParser(prog="kinklab", add_help=False)
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + version_string
    )
    parser.add_argument(
        "--help", action="store_true", help="show this help message and exit"
    )
    parser.add_argument(
        "--quiet", action="store_true", help="Only report warnings and errors."
    )
    parser.add_argument("--debug", action="store_true", help="Show debug output.")
    parser.add_argument(
        "subcommand", type=str, nargs="?", choices=list(subcommands.keys())
    )
    try:
        args, rest = parser.parse_known_args(argv)
        if args.debug:
            level = logging.DEBUG
        elif args.quiet:
            level = logging.WARNING
        else:
            level = logging.INFO
        logging.basicConfig(level=level, format="%(message)s")
        if args.help:
            if args.subcommand is None:
                parser.print_help()
                return 0
            rest.append("--help")
        if args.subcommand is None:
            parser.print_usage()
            return 2
        ret = subcommands[args.subcommand](rest)
    except ConfigError as e:
        logging.error("%s", e)
        return 2
    except SystemExit as e:
        if isinstance(e.code, int):
            return e.code
        return 0 if e.code is None else 2
    return 0 if ret is None else ret


def main(argv: Optional[List[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    return parse_and_dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
