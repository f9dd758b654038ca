"""
Command line interface of the UAV NOMA simulator.

Subcommands:

- run: run the full experiment and emit the plot tables;
- warmstart: train and save the warm-start Q-tables;
- baseline: run the heuristic controller only;
- oracle: check the warm-start tables against value iteration;
- sweep: run the learning-parameter sweep.
"""

# uavnoma/cli.py - the uavnoma command
#
# Copyright (C) 2026 The uavnoma Team
#
# uavnoma is free software: you can redistribute it and/or modify it
# under the terms of the GNU Lesser General Public License as published
# by the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# uavnoma is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or
# FITNESS FOR A PARTICULAR PURPOSE.  See the GNU Lesser General Public
# License for more details.

import os
import re
import sys
import logging
from argparse import ArgumentParser, ArgumentTypeError

from uavnoma import harness
from uavnoma.errors import ConfigurationError, Error

CMD_PREFIX = 'cmd_'

logger = logging.getLogger(__name__)


def main(argv=None):
    opt = parse_cmdline(argv)
    logging.basicConfig(
        level=opt.loglevel, format='%(asctime)s %(levelname)s %(message)s')

    cmd = globals()[CMD_PREFIX + opt.command]
    try:
        config = load_config(opt)
        return cmd(config, opt) or 0
    except ConfigurationError as e:
        print(f"uavnoma: configuration error: {e}", file=sys.stderr)
        return 2
    except Error as e:
        print(f"uavnoma: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"uavnoma: {e}", file=sys.stderr)
        return 1


def load_config(opt):
    """Return the experiment configuration with the command line overrides."""
    config = harness.load_experiment(opt.config)
    changes = {}
    if opt.seeds is not None:
        changes['seeds'] = opt.seeds
    if opt.slots is not None:
        changes['n_slots'] = opt.slots
    if opt.out is not None:
        changes['output'] = opt.out
    if opt.jobs is not None:
        changes['jobs'] = opt.jobs
    if opt.controller:
        changes['controllers'] = opt.controller
    if opt.command == 'baseline':
        changes['controllers'] = ['heuristic']
    return config.replace(**changes) if changes else config


def cmd_run(config, opt):
    harness.run_experiment(config)


def cmd_baseline(config, opt):
    harness.run_experiment(config)


def cmd_warmstart(config, opt):
    tables = harness.export_warmstart(config)
    for q in tables:
        if not q.metadata['converged']:
            logger.warning(
                "%s table not converged in %s episodes",
                q.metadata['mode'], q.metadata['episodes'])


def cmd_oracle(config, opt):
    modes = None
    if opt.controller:
        modes = [
            harness.WARMSTART_MODES[c] for c in opt.controller
            if c in harness.WARMSTART_MODES]
        if not modes:
            raise ConfigurationError(
                "the oracle checks the erl-plos and erl-los controllers only")
    ok = harness.oracle_check(
        config, modes=modes, all_states=opt.all_states, tol=opt.tol)
    if not ok:
        logger.error("learned policy differs from value iteration")
        return 1


def cmd_sweep(config, opt):
    points = harness.run_sweep(config)
    harness.emit_sweep(points, config.output)


def seed_range(s):
    """Parse ``a..b`` (inclusive) or a single seed."""
    m = re.match(r'^(\d+)(?:\.\.(\d+))?$', s)
    if not m:
        raise ArgumentTypeError(f"bad seed range: {s!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise ArgumentTypeError(f"empty seed range: {s!r}")
    return list(range(lo, hi + 1))


def single_seed(s):
    if not re.match(r'^\d+$', s):
        raise ArgumentTypeError(f"bad seed: {s!r}")
    return [int(s)]


def positive_int(s):
    try:
        rv = int(s)
    except ValueError:
        raise ArgumentTypeError(f"not an integer: {s!r}") from None
    if rv < 1:
        raise ArgumentTypeError(f"must be at least 1: {s!r}")
    return rv


def parse_cmdline(argv=None):
    parser = ArgumentParser(prog='uavnoma', description=__doc__)

    g = parser.add_mutually_exclusive_group()
    g.add_argument(
        '-q', '--quiet', help="Talk less", dest='loglevel',
        action='store_const', const=logging.WARN, default=logging.INFO)
    g.add_argument(
        '-v', '--verbose', help="Talk more", dest='loglevel',
        action='store_const', const=logging.DEBUG, default=logging.INFO)

    common = ArgumentParser(add_help=False)
    common.add_argument(
        '--config', default='default', metavar='PATH',
        help="the experiment configuration [default: the packaged one]")
    sg = common.add_mutually_exclusive_group()
    sg.add_argument(
        '--seed', dest='seeds', type=single_seed,
        metavar='N', help="run a single seed")
    sg.add_argument(
        '--seeds', dest='seeds', type=seed_range, metavar='A..B',
        help="run the seeds from A to B included")
    common.add_argument(
        '--slots', type=positive_int, metavar='N',
        help="the flight horizon in slots")
    common.add_argument(
        '--out', metavar='DIR', help="the directory receiving the results")
    common.add_argument(
        '--controller', action='append', choices=harness.CONTROLLERS,
        help="a controller to run (repeatable) [default: from the config]")
    common.add_argument(
        '--jobs', type=positive_int, metavar='N',
        help="the number of runs executed in parallel")

    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True
    cmds = [
        n[len(CMD_PREFIX):]
        for n in globals()
        if n.startswith(CMD_PREFIX) and callable(globals()[n])]
    helps = {
        'run': "run the experiment",
        'warmstart': "train and save the warm-start Q-tables",
        'baseline': "run the heuristic controller only",
        'oracle': "check the warm-start tables against value iteration",
        'sweep': "run the learning-parameter sweep",
    }
    for name in cmds:
        p = sub.add_parser(name, parents=[common], help=helps.get(name))
        if name == 'oracle':
            p.add_argument(
                '--all-states', action='store_true',
                help="check every cell, not only the greedy path")
            p.add_argument(
                '--tol', type=float, default=1e-4,
                help="relative slack accepted on the optimal values")

    opt = parser.parse_args(argv)
    if opt.out is not None:
        opt.out = os.path.expanduser(opt.out)
    return opt
