"""Tabular Q-learning controller of the UAV maneuver

The state is the UAV grid cell, the actions are the five maneuvers of
`~uavnoma.world.Action`. The table is updated online with the Bellman rule::

    Q(s, a) <- Q(s, a) + alpha * (r + gamma * max Q(s', .) - Q(s, a))

while the UAV follows an epsilon-greedy policy with exponentially decaying
exploration.

Slot convention: at slot *n* the UAV sits in ``q[n]`` and the throughput of
the slot is realized there. The action chosen at slot *n* moves the UAV to
``q[n+1]``; the transition is credited, when slot *n+1* is realized, with
the throughput of slot *n+1* plus the boundary penalty if the action tried
to leave the grid. A horizon of N slots makes N-1 updates.
"""

# uavnoma/qlearn.py - Q-table, epsilon-greedy policy and online learning
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

import csv
import json
import math
import logging

import numpy as np

from uavnoma._io import atomic_open, write_csv, write_json
from uavnoma._record import Record
from uavnoma._streams import as_streams
from uavnoma.environment import Environment
from uavnoma.errors import ConfigurationError, DomainError, InternalError
from uavnoma.world import Action, N_ACTIONS, next_cell

logger = logging.getLogger(__name__)

QTABLE_HEADER = ('cell_i', 'cell_j', 'action', 'value')


class QTable:
    """The action values of every (cell, action) pair of a grid.

    :param grid: the `~uavnoma.world.GridSpec` the table is for
    :param values: the initial values, shape ``(grid.n_cells, 5)``; zeros
        if not specified
    :param metadata: a `!dict` of information travelling with the table

    Rows are indexed by the flat cell index ``i * cells_per_side + j``,
    columns by `~uavnoma.world.Action`.
    """
    __slots__ = ('_grid', '_values', 'metadata')

    def __init__(self, grid, values=None, metadata=None):
        shape = (grid.n_cells, N_ACTIONS)
        if values is None:
            values = np.zeros(shape)
        else:
            values = np.array(values, dtype=float)
            if values.shape != shape:
                raise ConfigurationError(
                    f"Q-table of shape {values.shape} for a grid needing"
                    f" {shape}")
            if not np.isfinite(values).all():
                raise ConfigurationError("Q-table with non-finite values")

        self._grid = grid
        self._values = values
        self.metadata = dict(metadata) if metadata else {}

    @classmethod
    def zeros(cls, grid):
        """Return a table of zeros for *grid*."""
        return cls(grid)

    def __repr__(self):
        return f"<{self.__class__.__name__} for {self._grid!r}>"

    def __eq__(self, other):
        if not isinstance(other, QTable):
            return NotImplemented
        return (self._grid == other._grid
            and np.array_equal(self._values, other._values))

    __hash__ = None

    def __getitem__(self, key):
        cell, action = key
        return float(self._values[self._grid.index(cell), int(action)])

    @property
    def grid(self):
        return self._grid

    @property
    def values(self):
        """The table as a `!numpy` array, modified in place by updates."""
        return self._values

    def row(self, cell):
        """Return the action values of *cell* (a view on the table)."""
        return self._values[self._grid.index(cell)]

    def greedy_action(self, cell):
        """Return the best action in *cell*, the first one on ties."""
        return Action(int(np.argmax(self.row(cell))))

    def greedy_policy(self):
        """Return a `!dict` mapping every cell to its greedy action."""
        best = np.argmax(self._values, axis=1)
        return {
            cell: Action(int(a))
            for cell, a in zip(self._grid.cells(), best)}

    def copy(self):
        return QTable(self._grid, self._values, self.metadata)


class LearningParams(Record):
    """The parameters of the learning rule and of the policy.

    :param alpha: the learning rate, in [0, 1]
    :param gamma: the discount factor, in [0, 1)
    :param epsilon0: the initial exploration probability, in [0, 1]
    :param epsilon_decay: the per-slot decay ratio of epsilon, in (0, 1]
    :param epsilon_min: the floor of epsilon, in [0, 1]
    :param penalty: the reward (bps/Hz, not positive) added when an action
        tries to leave the grid
    """
    __slots__ = (
        'alpha', 'gamma', 'epsilon0', 'epsilon_decay', 'epsilon_min',
        'penalty')

    def __init__(self, alpha=0.3, gamma=0.9, epsilon0=0.9,
            epsilon_decay=0.999, epsilon_min=0.01, penalty=-10.0):
        alpha = float(alpha)
        gamma = float(gamma)
        epsilon0 = float(epsilon0)
        epsilon_decay = float(epsilon_decay)
        epsilon_min = float(epsilon_min)
        penalty = float(penalty)
        if not 0 <= alpha <= 1:
            raise ConfigurationError(f"alpha must be in [0, 1], got {alpha}")
        if not 0 <= gamma < 1:
            raise ConfigurationError(f"gamma must be in [0, 1), got {gamma}")
        if not 0 <= epsilon0 <= 1:
            raise ConfigurationError(
                f"epsilon0 must be in [0, 1], got {epsilon0}")
        if not 0 < epsilon_decay <= 1:
            raise ConfigurationError(
                f"epsilon_decay must be in (0, 1], got {epsilon_decay}")
        if not 0 <= epsilon_min <= 1:
            raise ConfigurationError(
                f"epsilon_min must be in [0, 1], got {epsilon_min}")
        if not penalty <= 0:
            raise ConfigurationError(
                f"the boundary penalty must not be positive, got {penalty}")
        self._set(
            alpha=alpha, gamma=gamma, epsilon0=epsilon0,
            epsilon_decay=epsilon_decay, epsilon_min=epsilon_min,
            penalty=penalty)


def epsilon_at(n, params):
    """Return the exploration probability at slot *n* (from 1)."""
    if n < 1:
        raise DomainError(f"slots are counted from 1, got {n}")
    return max(
        params.epsilon_min, params.epsilon0 * params.epsilon_decay ** (n - 1))


def select_action(q, cell, epsilon, rng):
    """Choose an action in *cell* with the epsilon-greedy policy.

    With probability *epsilon* the action is uniform over the five actions,
    otherwise it is the greedy action of *q*. *rng* is not used when
    *epsilon* is zero.
    """
    return Action(_select(q.row(cell), epsilon, rng))


def _select(row, epsilon, rng):
    if epsilon > 0 and rng.random() < epsilon:
        return int(rng.integers(N_ACTIONS))
    return int(row.argmax())


def bellman_update(q, s, a, r, s_next, params):
    """Update the entry (*s*, *a*) of *q* in place and return its new value.

    :param r: the reward of the transition from *s* to *s_next*
    """
    if not math.isfinite(r):
        raise DomainError(f"reward must be finite, got {r}")
    values = q.values
    i = q.grid.index(s)
    j = q.grid.index(s_next)
    return _update(values, i, int(a), r, j, params.alpha, params.gamma)


def _update(values, i, a, r, j, alpha, gamma):
    old = values[i, a]
    rv = old + alpha * (r + gamma * values[j].max() - old)
    values[i, a] = rv
    return rv


class EpisodeTrace:
    """The per-slot record of a run.

    All the attributes are `!numpy` arrays with one entry per slot:

    - `cells`: the UAV cell, shape (N, 2);
    - `actions`: the action chosen in the slot (the one chosen at the last
      slot is never executed);
    - `rewards`: the reward credited at the slot, penalties included;
    - `throughput`: the sum-rate throughput realized in the slot;
    - `distances`, `gains`, `los`: the users' links, shape (N, K);
    - `positions`: the users' positions, shape (N, K, 2);
    - `uav_positions`: the horizontal UAV position, shape (N, 2).
    """
    __slots__ = (
        'cells', 'actions', 'rewards', 'throughput', 'distances', 'gains',
        'los', 'positions', 'uav_positions')

    def __init__(self, cells, actions, rewards, throughput, distances, gains,
            los, positions, uav_positions):
        self.cells = np.asarray(cells, dtype=int).reshape(-1, 2)
        self.actions = np.asarray(actions, dtype=int)
        self.rewards = np.asarray(rewards, dtype=float)
        self.throughput = np.asarray(throughput, dtype=float)
        self.distances = np.asarray(distances, dtype=float)
        self.gains = np.asarray(gains, dtype=float)
        self.los = np.asarray(los, dtype=bool)
        self.positions = np.asarray(positions, dtype=float)
        self.uav_positions = np.asarray(uav_positions, dtype=float)
        n = len(self.cells)
        for name in self.__slots__:
            if len(getattr(self, name)) != n:
                raise InternalError(f"trace column {name} has the wrong length")

    def __len__(self):
        return len(self.rewards)

    def __repr__(self):
        return (f"<{self.__class__.__name__} of {len(self)} slots,"
            f" {self.n_users} users>")

    @property
    def n_users(self):
        return self.gains.shape[1]

    @property
    def running_average(self):
        """The running average of the reward column."""
        return np.cumsum(self.rewards) / np.arange(1, len(self) + 1)

    @property
    def throughput_average(self):
        """The running average of the throughput, penalties excluded."""
        return np.cumsum(self.throughput) / np.arange(1, len(self) + 1)

    @property
    def average_throughput(self):
        return float(self.throughput_average[-1])

    @property
    def average_reward(self):
        return float(self.running_average[-1])

    @property
    def los_fraction(self):
        """The fraction of (slot, user) links in line of sight."""
        return float(self.los.mean())

    def header(self):
        rv = ['slot', 'cell_i', 'cell_j', 'action', 'reward', 'running_avg']
        for k in range(1, self.n_users + 1):
            rv.extend([f'd_{k}', f'h_{k}', f'los_{k}', f'x_{k}', f'y_{k}'])
        return rv

    def rows(self):
        """Iterate on the rows of the trace file."""
        avg = self.running_average
        for n in range(len(self)):
            row = [
                n + 1, int(self.cells[n, 0]), int(self.cells[n, 1]),
                Action(int(self.actions[n])).label,
                self.rewards[n], avg[n]]
            for k in range(self.n_users):
                row.extend([
                    self.distances[n, k], self.gains[n, k],
                    int(self.los[n, k]),
                    self.positions[n, k, 0], self.positions[n, k, 1]])
            yield row

    def write_csv(self, filename):
        """Write the trace to *filename*, atomically."""
        write_csv(filename, self.header(), self.rows())


class TraceRecorder:
    """Accumulate the slots of a run and build its `EpisodeTrace`."""
    def __init__(self):
        self.cells = []
        self.actions = []
        self.rewards = []
        self.throughput = []
        self.distances = []
        self.gains = []
        self.los = []

    def append(self, cell, action, reward, obs):
        self.cells.append(cell)
        self.actions.append(int(action))
        self.rewards.append(reward)
        self.throughput.append(obs.throughput)
        self.distances.append([link.distance for link in obs.links])
        self.gains.append([link.gain for link in obs.links])
        self.los.append([link.los for link in obs.links])

    def build(self, env):
        n = len(self.rewards)
        return EpisodeTrace(
            self.cells, self.actions, self.rewards, self.throughput,
            self.distances, self.gains, self.los, env.positions[:n],
            [env.uav_position(tuple(c)) for c in self.cells])


def run_online(scenario, q_init, params, rng, n_slots, episode_slots=None):
    """Fly the UAV for *n_slots* slots learning online.

    :param scenario: the `~uavnoma.scenario.Scenario` to fly in
    :param q_init: the initial `QTable`, not modified
    :param params: the `LearningParams`
    :param rng: the run's `~uavnoma._streams.Streams` or its seed
    :param n_slots: the horizon
    :param episode_slots: if set, the UAV is taken back to its initial cell
        every *episode_slots* slots; no update crosses a reset
    :return: the learned `QTable` and the `EpisodeTrace` of the run
    """
    grid = scenario.grid
    if q_init.grid != grid:
        raise ConfigurationError(
            f"Q-table for {q_init.grid!r}, scenario on {grid!r}")
    if episode_slots is not None and episode_slots < 1:
        raise ConfigurationError(
            f"episodes must last at least 1 slot, got {episode_slots}")

    streams = as_streams(rng)
    env = Environment(scenario, streams, n_slots)
    policy = streams['policy']
    q = q_init.copy()
    values = q.values
    alpha = params.alpha
    gamma = params.gamma
    penalty = params.penalty
    recorder = TraceRecorder()

    cell = scenario.initial_cell
    prev = None
    for n in range(1, n_slots + 1):
        if episode_slots and n > 1 and (n - 1) % episode_slots == 0:
            cell = scenario.initial_cell
            prev = None

        obs = env.observe(n, cell)
        idx = grid.index(cell)
        reward = obs.throughput
        if prev is not None:
            pidx, pa, violated = prev
            if violated:
                reward += penalty
            _update(values, pidx, pa, reward, idx, alpha, gamma)

        action = _select(values[idx], epsilon_at(n, params), policy)
        recorder.append(cell, action, reward, obs)

        target, violated = next_cell(cell, action, grid)
        prev = (idx, action, violated)
        cell = target

    trace = recorder.build(env)
    logger.debug(
        "online run of %s slots: average throughput %.4f bps/Hz",
        n_slots, trace.average_throughput)
    return q, trace


def save_qtable(q, filename):
    """Save *q* to *filename*.

    Files ending in ``.npy`` get the raw array, anything else the CSV
    format with columns ``cell_i, cell_j, action, value``, cells in flat
    index order and actions in enumeration order.
    """
    if str(filename).endswith('.npy'):
        with atomic_open(filename, 'wb') as f:
            np.save(f, q.values, allow_pickle=False)
        return

    def rows():
        for cell, row in zip(q.grid.cells(), q.values):
            for a in Action:
                yield (cell[0], cell[1], a.label, row[a])

    write_csv(filename, QTABLE_HEADER, rows())


def load_qtable(filename, grid):
    """Load a `QTable` for *grid* saved by `save_qtable()`."""
    filename = str(filename)
    if filename.endswith('.npy'):
        try:
            values = np.load(filename, allow_pickle=False)
        except (OSError, ValueError) as e:
            raise ConfigurationError(str(e), filename=filename) from None
        try:
            return QTable(grid, values)
        except ConfigurationError as e:
            raise e.with_context(filename=filename) from None

    values = np.full((grid.n_cells, N_ACTIONS), np.nan)
    try:
        f = open(filename, newline='', encoding='utf8')
    except OSError as e:
        raise ConfigurationError(
            e.strerror or str(e), filename=filename) from None
    with f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != QTABLE_HEADER:
            raise ConfigurationError(
                f"bad header: {header!r}", filename=filename, lineno=1)
        for row in reader:
            lineno = reader.line_num
            try:
                i, j, label, value = row
                cell = (int(i), int(j))
                action = Action[label.upper()]
                value = float(value)
                if not math.isfinite(value):
                    raise ValueError(value)
            except (ValueError, KeyError):
                raise ConfigurationError(
                    f"bad Q-table row: {row!r}", filename=filename,
                    lineno=lineno) from None
            if not grid.contains(cell):
                raise ConfigurationError(
                    f"cell {cell} outside {grid!r}", filename=filename,
                    lineno=lineno)
            idx = grid.index(cell)
            if not np.isnan(values[idx, action]):
                raise ConfigurationError(
                    f"duplicate entry for {cell} {label}",
                    filename=filename, lineno=lineno)
            values[idx, action] = value

    if np.isnan(values).any():
        missing = int(np.isnan(values).sum())
        raise ConfigurationError(
            f"{missing} entries missing for {grid!r}", filename=filename)
    try:
        return QTable(grid, values)
    except ConfigurationError as e:
        raise e.with_context(filename=filename) from None


def save_metadata(q, filename):
    """Write the metadata of *q* as a JSON file."""
    write_json(filename, q.metadata)


def load_metadata(filename):
    try:
        with open(filename, encoding='utf8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            e.msg, filename=str(filename), lineno=e.lineno) from None
    except OSError as e:
        raise ConfigurationError(
            e.strerror or str(e), filename=str(filename)) from None
