"""Seeded experiments comparing the maneuver controllers

An experiment runs every controller on every seed of its configuration,
writes the per-slot traces and the per-run summaries, and emits the tables
behind the comparison plots: convergence over the slots, positions at
sampled slots, average throughput against the flight duration and the
learning-parameter sweep.

Controllers:

- ``rl``: Q-learning from an all-zero table;
- ``erl-plos``: Q-learning from a table trained on the probabilistic LoS
  surrogate;
- ``erl-los``: Q-learning from a table trained on the pure LoS surrogate;
- ``heuristic``: one step per slot toward the best predicted cell.

Every run draws its randomness from named streams of its seed: the outputs
are a function of the configuration and of the seeds only.
"""

# uavnoma/harness.py - experiment orchestration and result files
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
import logging
import itertools
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from uavnoma._config import load_json, located
from uavnoma._io import write_csv
from uavnoma._record import Record
from uavnoma._streams import Streams
from uavnoma.baseline import run_heuristic
from uavnoma.errors import ConfigurationError
from uavnoma.oracle import (
    DeterministicMdp, value_iteration_oracle, optimal_actions, greedy_path)
from uavnoma.qlearn import (
    LearningParams, QTable, run_online, save_qtable, save_metadata)
from uavnoma.scenario import DATA_DIR, load_scenario
from uavnoma.warmstart import SurrogateSpec, surrogate_reward_field, \
    train_qtable

logger = logging.getLogger(__name__)

DEFAULT_EXPERIMENT = os.path.join(DATA_DIR, 'default_experiment.json')

CONTROLLERS = ('rl', 'erl-plos', 'erl-los', 'heuristic')
WARMSTART_MODES = {'erl-plos': 'plos', 'erl-los': 'los'}

# Width of the trailing window smoothing the convergence curves (slots)
SMOOTHING_WINDOW = 100

SUMMARY_METRICS = (
    'final_average', 'final_reward_average', 'early_average',
    'final_quarter', 'los_fraction')
COMPARED_METRICS = ('early_average', 'final_quarter', 'final_average')


class SweepSpec(Record):
    """The grid of learning parameters explored by `run_sweep()`."""
    __slots__ = ('controllers', 'alpha', 'gamma', 'epsilon0')

    def __init__(self, controllers=('erl-plos',), alpha=(0.1, 0.3, 0.7),
            gamma=(0.9,), epsilon0=(0.9,)):
        controllers = tuple(controllers)
        alpha = tuple(float(x) for x in alpha)
        gamma = tuple(float(x) for x in gamma)
        epsilon0 = tuple(float(x) for x in epsilon0)
        _check_controllers(controllers)
        for name, values in (
                ('alpha', alpha), ('gamma', gamma), ('epsilon0', epsilon0)):
            if not values:
                raise ConfigurationError(f"the sweep needs at least one {name}")
        self._set(
            controllers=controllers, alpha=alpha, gamma=gamma,
            epsilon0=epsilon0)

    def points(self, base):
        """Iterate on the `LearningParams` of the grid, derived from *base*."""
        for a, g, e in itertools.product(self.alpha, self.gamma, self.epsilon0):
            yield base.replace(alpha=a, gamma=g, epsilon0=e)


class ExperimentConfig(Record):
    """The configuration of an experiment.

    :param scenario: the scenario file, or ``default``
    :param controllers: the controllers to run, among `CONTROLLERS`
    :param seeds: the master seeds, one run per controller and seed
    :param n_slots: the horizon N of every run
    :param learning: the `~uavnoma.qlearn.LearningParams`
    :param surrogate: the `~uavnoma.warmstart.SurrogateSpec` of the warm
        start; its mode is set by the controller
    :param sweep: the `SweepSpec` of the parameter sweep
    :param output: the directory receiving the result files
    :param jobs: the number of runs executed in parallel
    """
    __slots__ = (
        'scenario', 'controllers', 'seeds', 'n_slots', 'learning',
        'surrogate', 'sweep', 'output', 'jobs')

    def __init__(self, scenario='default', controllers=CONTROLLERS,
            seeds=(0,), n_slots=10000, learning=None, surrogate=None,
            sweep=None, output='results', jobs=1):
        controllers = tuple(controllers)
        seeds = tuple(int(s) for s in seeds)
        n_slots = int(n_slots)
        jobs = int(jobs)
        _check_controllers(controllers)
        if not controllers:
            raise ConfigurationError("no controller to run")
        if not seeds:
            raise ConfigurationError("at least one seed is needed")
        if any(s < 0 for s in seeds):
            raise ConfigurationError(f"seeds must be nonnegative: {seeds}")
        if len(set(seeds)) != len(seeds):
            raise ConfigurationError(f"duplicate seeds: {seeds}")
        if n_slots < 1:
            raise ConfigurationError(
                f"the horizon must be at least 1 slot, got {n_slots}")
        if jobs < 1:
            raise ConfigurationError(f"jobs must be at least 1, got {jobs}")
        if scenario != 'default' and not os.path.exists(scenario):
            raise ConfigurationError(
                "scenario file not found", filename=str(scenario))
        self._set(
            scenario=scenario, controllers=controllers, seeds=seeds,
            n_slots=n_slots,
            learning=learning if learning is not None else LearningParams(),
            surrogate=surrogate if surrogate is not None else SurrogateSpec(),
            sweep=sweep if sweep is not None else SweepSpec(),
            output=output, jobs=jobs)

    def load_scenario(self):
        return load_scenario(self.scenario)


def _check_controllers(controllers):
    for c in controllers:
        if c not in CONTROLLERS:
            raise ConfigurationError(
                f"unknown controller {c!r}; choose among"
                f" {', '.join(CONTROLLERS)}")


def load_experiment(source):
    """Load an `ExperimentConfig` from a JSON file, or ``default``.

    A relative scenario path is resolved against the configuration file
    directory.
    """
    filename = DEFAULT_EXPERIMENT if source == 'default' else source
    doc = load_json(filename)
    base_dir = os.path.dirname(os.path.abspath(filename))
    return _experiment_from_section(doc, base_dir)


def _experiment_from_section(doc, base_dir):
    doc.check_keys((
        'scenario', 'controllers', 'seeds', 'slots', 'learning', 'surrogate',
        'sweep', 'output', 'jobs', 'description'))

    scenario = doc.string('scenario', 'default')
    if scenario != 'default':
        scenario = os.path.join(base_dir, scenario)
        if not os.path.exists(scenario):
            raise doc.error(f"scenario file not found: {scenario}", 'scenario')

    controllers = []
    for path, value in doc.items('controllers', list(CONTROLLERS)):
        if value not in CONTROLLERS:
            raise ConfigurationError(
                f"unknown controller {value!r}", filename=doc.filename,
                path=path)
        controllers.append(value)

    seeds = []
    for path, value in doc.items('seeds', [0]):
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ConfigurationError(
                f"seeds must be nonnegative integers, got {value!r}",
                filename=doc.filename, path=path)
        seeds.append(value)

    learning = _record(doc, 'learning', LearningParams)
    surrogate = _record(doc, 'surrogate', SurrogateSpec, exclude=(
        'mode', 'predicted', 'user_positions'), integers=(
        'max_episodes', 'episode_slots', 'window'))

    sec = doc.section('sweep', None)
    if sec is None:
        sweep = SweepSpec()
    else:
        sec.check_keys(SweepSpec.__slots__)
        kwargs = {}
        for key in SweepSpec.__slots__:
            if key in sec:
                kwargs[key] = [v for _, v in sec.items(key)]
        sweep = located(sec, lambda: SweepSpec(**kwargs))

    return located(doc, lambda: ExperimentConfig(
        scenario=scenario, controllers=controllers, seeds=seeds,
        n_slots=doc.integer('slots', 10000), learning=learning,
        surrogate=surrogate, sweep=sweep,
        output=doc.string('output', 'results'),
        jobs=doc.integer('jobs', 1)))


def _record(doc, key, cls, exclude=(), integers=()):
    sec = doc.section(key, None)
    if sec is None:
        return cls()
    allowed = [k for k in cls.__slots__ if k not in exclude]
    sec.check_keys(allowed)
    kwargs = {
        k: sec.integer(k) if k in integers else sec.number(k)
        for k in allowed if k in sec}
    return located(sec, lambda: cls(**kwargs))


class RunSummary:
    """The outcome of one controller on one seed.

    :ivar controller: the controller name
    :ivar seed: the master seed
    :ivar params: the `~uavnoma.qlearn.LearningParams` used
    :ivar trace: the `~uavnoma.qlearn.EpisodeTrace` of the run
    :ivar warmstart: the metadata of the initial table, for warm-started
        controllers

    The throughput figures exclude the boundary penalties, the reward
    figures include them.
    """
    __slots__ = ('controller', 'seed', 'params', 'trace', 'warmstart')

    def __init__(self, controller, seed, params, trace, warmstart=None):
        self.controller = controller
        self.seed = seed
        self.params = params
        self.trace = trace
        self.warmstart = warmstart

    def __repr__(self):
        return (f"<{self.__class__.__name__} {self.controller} seed"
            f" {self.seed}: {self.final_average:.4f} bps/Hz>")

    @property
    def n_slots(self):
        return len(self.trace)

    @property
    def throughput(self):
        """The instantaneous throughput series."""
        return self.trace.throughput

    @property
    def average_throughput(self):
        """The average throughput against the flight duration."""
        return self.trace.throughput_average

    @property
    def final_average(self):
        return float(self.average_throughput[-1])

    @property
    def final_reward_average(self):
        return float(self.trace.running_average[-1])

    @property
    def early_average(self):
        """The average throughput over the first quarter of the horizon."""
        return float(self.average_throughput[max(1, self.n_slots // 4) - 1])

    @property
    def final_quarter(self):
        """The average throughput over the last quarter of the horizon."""
        tail = max(1, self.n_slots // 4)
        return float(self.throughput[-tail:].mean())

    @property
    def los_fraction(self):
        return self.trace.los_fraction

    def metric(self, name):
        return getattr(self, name)


def run_controller(scenario, config, controller, seed, learning=None):
    """Run *controller* on *scenario* with the master *seed*."""
    params = learning if learning is not None else config.learning
    streams = Streams(seed)
    n_slots = config.n_slots
    if controller == 'heuristic':
        trace = run_heuristic(scenario, streams, n_slots)
        return RunSummary(controller, seed, params, trace)

    if controller == 'rl':
        q0 = QTable.zeros(scenario.grid)
    else:
        spec = config.surrogate.replace(mode=WARMSTART_MODES[controller])
        q0 = train_qtable(scenario, spec, params, streams)
    _, trace = run_online(scenario, q0, params, streams, n_slots)
    return RunSummary(
        controller, seed, params, trace,
        warmstart=dict(q0.metadata) if controller != 'rl' else None)


def _run_task(task):
    scenario, config, controller, seed, learning = task
    rv = run_controller(scenario, config, controller, seed, learning)
    logger.info(
        "%s seed %s: average throughput %.4f bps/Hz", controller, seed,
        rv.final_average)
    return rv


def _execute(tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(_run_task, tasks))


def run_experiment(config, output=None):
    """Run every controller of *config* on every seed and write the results.

    :param output: the result directory, overriding `!config.output`; if
        `!False` nothing is written
    :return: the list of `RunSummary`, ordered by controller then seed
    """
    if not config.controllers:
        raise ConfigurationError("no controller to run")
    scenario = config.load_scenario()
    logger.info(
        "running %s on %s seeds, %s slots", ', '.join(config.controllers),
        len(config.seeds), config.n_slots)
    tasks = [
        (scenario, config, c, s, None)
        for c in config.controllers for s in config.seeds]
    summaries = _execute(tasks, config.jobs)

    if output is False:
        return summaries
    out = output if output is not None else config.output
    for rs in summaries:
        rs.trace.write_csv(os.path.join(
            out, 'traces', f'{rs.controller}-seed{rs.seed}.csv'))
    write_summaries(summaries, os.path.join(out, 'summaries.csv'))
    write_aggregate(summaries, os.path.join(out, 'aggregate.csv'))
    write_comparisons(summaries, os.path.join(out, 'comparisons.csv'))
    emit_plot_data(summaries, out)
    logger.info("results written to %s", out)
    return summaries


def write_summaries(summaries, filename):
    header = ('controller', 'seed') + SUMMARY_METRICS + (
        'warmstart_episodes', 'warmstart_converged')
    rows = []
    for rs in summaries:
        ws = rs.warmstart or {}
        rows.append(
            [rs.controller, rs.seed]
            + [rs.metric(m) for m in SUMMARY_METRICS]
            + [str(ws.get('episodes', '')),
                {True: '1', False: '0'}.get(ws.get('converged'), '')])
    write_csv(filename, header, rows)


def _by_controller(summaries):
    rv = {}
    for rs in summaries:
        rv.setdefault(rs.controller, []).append(rs)
    return rv


def aggregate(summaries):
    """Return the mean and std over the seeds of every summary metric.

    :return: a list of `!dict`, one per controller in order of appearance,
        with keys ``controller``, ``seeds`` and ``<metric>_mean``,
        ``<metric>_std`` for each metric in `SUMMARY_METRICS`
    """
    rv = []
    for controller, group in _by_controller(summaries).items():
        row = {'controller': controller, 'seeds': len(group)}
        for m in SUMMARY_METRICS:
            values = np.array([rs.metric(m) for rs in group])
            row[f'{m}_mean'] = float(values.mean())
            row[f'{m}_std'] = float(values.std())
        rv.append(row)
    return rv


def write_aggregate(summaries, filename):
    header = ['controller', 'seeds']
    for m in SUMMARY_METRICS:
        header.extend([f'{m}_mean', f'{m}_std'])
    write_csv(filename, header, (
        [row[k] for k in header] for row in aggregate(summaries)))


def compare_controllers(summaries):
    """Count, for every ordered pair of controllers, the seeds each wins.

    :return: a list of `!dict` with keys ``controller``, ``versus``,
        ``metric``, ``wins`` (seeds where *controller* is strictly better),
        ``ties`` and ``seeds`` (the seeds both controllers ran)
    """
    groups = _by_controller(summaries)
    rv = []
    for a, b in itertools.permutations(groups, 2):
        ra = {rs.seed: rs for rs in groups[a]}
        rb = {rs.seed: rs for rs in groups[b]}
        seeds = [s for s in ra if s in rb]
        for m in COMPARED_METRICS:
            wins = sum(ra[s].metric(m) > rb[s].metric(m) for s in seeds)
            ties = sum(ra[s].metric(m) == rb[s].metric(m) for s in seeds)
            rv.append({
                'controller': a, 'versus': b, 'metric': m, 'wins': wins,
                'ties': ties, 'seeds': len(seeds)})
    return rv


def write_comparisons(summaries, filename):
    header = ('controller', 'versus', 'metric', 'wins', 'ties', 'seeds')
    write_csv(filename, header, (
        [row[k] for k in header] for row in compare_controllers(summaries)))


def sample_slots(n_slots):
    """The slots at which positions are reported: N/4, N/2, 3N/4 and N."""
    rv = []
    for f in (1, 2, 3, 4):
        n = max(1, n_slots * f // 4)
        if n not in rv:
            rv.append(n)
    return rv


def duration_slots(n_slots, points=10):
    """The flight durations the average throughput is reported at."""
    rv = []
    for f in range(1, points + 1):
        n = max(1, n_slots * f // points)
        if n not in rv:
            rv.append(n)
    return rv


def _trailing_mean(x, window):
    c = np.concatenate([[0.0], np.cumsum(x)])
    n = np.arange(1, len(x) + 1)
    lo = np.maximum(0, n - window)
    return (c[n] - c[lo]) / (n - lo)


def emit_plot_data(summaries, output, sweep=None):
    """Write the tables behind the comparison plots into *output*.

    :param summaries: the `RunSummary` of an experiment
    :param sweep: the result of `run_sweep()`, if available
    :return: the list of the files written
    """
    if not summaries:
        raise ConfigurationError("no run summary to plot")
    groups = _by_controller(summaries)
    written = []

    fn = os.path.join(output, 'fig_convergence.csv')
    write_csv(fn, ('slot', 'controller', 'mean', 'std', 'smoothed'),
        _convergence_rows(groups))
    written.append(fn)

    fn = os.path.join(output, 'fig_positions.csv')
    write_csv(fn, ('controller', 'seed', 'slot', 'entity', 'x', 'y'),
        _position_rows(groups))
    written.append(fn)

    fn = os.path.join(output, 'fig_duration.csv')
    write_csv(fn, (
        'duration', 'controller', 'mean', 'std', 'reward_mean',
        'reward_std'), _duration_rows(groups))
    written.append(fn)

    if sweep is not None:
        written.append(emit_sweep(sweep, output))

    return written


def _convergence_rows(groups):
    for controller, group in groups.items():
        series = np.array([rs.throughput for rs in group])
        mean = series.mean(axis=0)
        std = series.std(axis=0)
        smoothed = _trailing_mean(mean, SMOOTHING_WINDOW)
        for n in range(series.shape[1]):
            yield (n + 1, controller, mean[n], std[n], smoothed[n])


def _position_rows(groups):
    for controller, group in groups.items():
        rs = group[0]
        trace = rs.trace
        for n in sample_slots(len(trace)):
            x, y = trace.uav_positions[n - 1]
            yield (controller, rs.seed, n, 'uav', x, y)
            for k in range(trace.n_users):
                yield (controller, rs.seed, n, f'user{k + 1}',
                    trace.positions[n - 1, k, 0], trace.positions[n - 1, k, 1])


def _duration_rows(groups):
    for controller, group in groups.items():
        avg = np.array([rs.average_throughput for rs in group])
        ravg = np.array([rs.trace.running_average for rs in group])
        for n in duration_slots(avg.shape[1]):
            yield (n, controller, avg[:, n - 1].mean(), avg[:, n - 1].std(),
                ravg[:, n - 1].mean(), ravg[:, n - 1].std())


class SweepPoint(Record):
    """The runs of one controller at one point of the sweep grid."""
    __slots__ = ('params', 'controller', 'summaries')

    def __init__(self, params, controller, summaries):
        self._set(
            params=params, controller=controller, summaries=tuple(summaries))

    def final_averages(self):
        return np.array([rs.final_average for rs in self.summaries])


def run_sweep(config):
    """Run the sweep controllers on every point of the parameter grid.

    :return: a list of `SweepPoint`
    """
    scenario = config.load_scenario()
    grid = list(config.sweep.points(config.learning))
    logger.info(
        "sweeping %s parameter sets on %s seeds", len(grid), len(config.seeds))
    tasks = [
        (scenario, config, c, s, params)
        for params in grid for c in config.sweep.controllers
        for s in config.seeds]
    summaries = _execute(tasks, config.jobs)

    rv = []
    it = iter(summaries)
    for params in grid:
        for c in config.sweep.controllers:
            rv.append(SweepPoint(
                params, c, [next(it) for _ in config.seeds]))
    return rv


def emit_sweep(points, output):
    """Write the sweep table ``fig_sweep.csv`` and return its name."""
    fn = os.path.join(output, 'fig_sweep.csv')
    write_csv(fn, ('alpha', 'gamma', 'epsilon0', 'controller', 'mean', 'std'),
        sweep_rows(points))
    return fn


def sweep_rows(points):
    for p in points:
        values = p.final_averages()
        yield (p.params.alpha, p.params.gamma, p.params.epsilon0,
            p.controller, values.mean(), values.std())


def export_warmstart(config, output=None, modes=None):
    """Train the warm-start tables of every seed and save them.

    The tables go in ``qtables/<mode>-seed<k>.csv`` under the output
    directory, each with a JSON metadata sidecar.

    :return: the list of the tables trained
    """
    out = output if output is not None else config.output
    if modes is None:
        modes = [
            WARMSTART_MODES[c] for c in config.controllers
            if c in WARMSTART_MODES] or list(WARMSTART_MODES.values())
    scenario = config.load_scenario()
    rv = []
    for mode in modes:
        spec = config.surrogate.replace(mode=mode)
        for seed in config.seeds:
            q = train_qtable(scenario, spec, config.learning, Streams(seed))
            base = os.path.join(out, 'qtables', f'{mode}-seed{seed}')
            save_qtable(q, base + '.csv')
            save_metadata(q, base + '.json')
            rv.append(q)
    return rv


def oracle_check(config, output=None, modes=None, all_states=False,
        tol=1e-4):
    """Compare the warm-start tables with value iteration on the surrogate.

    The greedy action of each trained table is checked on the cells of its
    greedy path from the initial cell, or on every cell if *all_states*.
    Results go to ``oracle.csv`` in the output directory.

    :return: `!True` if every checked action is optimal
    """
    out = output if output is not None else config.output
    if modes is None:
        modes = list(WARMSTART_MODES.values())
    scenario = config.load_scenario()
    grid = scenario.grid
    rows = []
    ok = True
    for mode in modes:
        spec = config.surrogate.replace(mode=mode)
        field = surrogate_reward_field(spec, scenario)
        mdp = DeterministicMdp.from_cell_rewards(
            grid, field, config.learning.penalty)
        allowed = optimal_actions(
            value_iteration_oracle(mdp, config.learning.gamma), tol)
        for seed in config.seeds:
            q = train_qtable(scenario, spec, config.learning, Streams(seed))
            cells = list(grid.cells()) if all_states \
                else greedy_path(q, scenario.initial_cell)
            seed_ok = True
            for cell in cells:
                learned = q.greedy_action(cell)
                best = allowed[grid.index(cell)]
                agree = learned in best
                seed_ok = seed_ok and agree
                rows.append((
                    mode, seed, cell[0], cell[1], learned.label,
                    '|'.join(a.label for a in sorted(best)), int(agree)))
            logger.info(
                "oracle %s seed %s: %s", mode, seed,
                "agrees" if seed_ok else "DISAGREES")
            ok = ok and seed_ok

    write_csv(os.path.join(out, 'oracle.csv'), (
        'mode', 'seed', 'cell_i', 'cell_j', 'learned', 'optimal', 'agree'),
        rows)
    return ok
