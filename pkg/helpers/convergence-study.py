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

"""Print the free kink position error for a sequence of grid spacings."""

import argparse
import logging

from kinklab.evolution import EvolveConfig, ForcingProfile
from kinklab.harness import RunConfig, run_experiment


parser = argparse.ArgumentParser()
parser.add_argument(
    '--dx', type=float, action='append', default=[],
    help='Grid spacing (may be repeated).')
parser.add_argument(
    '--t-end', type=float, default=20.0, help='Final time.')
parser.add_argument(
    '--u', type=float, default=0.3, help='Kink velocity.')
args = parser.parse_args()

logging.basicConfig(level=logging.WARNING)

previous = None
for dx in (args.dx or [0.04, 0.02, 0.01]):
    dt = 0.5 * dx
    cfg = RunConfig(
        EvolveConfig(dt, args.t_end, int(round(args.t_end / dt))),
        ForcingProfile('zero'), halfwidth=60.0, dx=dx, u_s=args.u)
    final = run_experiment(cfg).records[-1]
    error = abs(final.xi - args.u * args.t_end)
    if previous is None:
        print('dx=%g error=%.3e' % (dx, error))
    else:
        print('dx=%g error=%.3e ratio=%.3f' % (dx, error, previous / error))
    previous = error
