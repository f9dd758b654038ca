"""Exact solution of deterministic grid MDPs

The learning controllers are checked against value iteration on the same
decision process, when the process is deterministic: the surrogate world of
the warm start, or a static toy world without shadowing and fading.
"""

# uavnoma/oracle.py - value iteration on deterministic MDPs
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

from collections import namedtuple

import numpy as np

from uavnoma.channel import Condition, realize_gain
from uavnoma.errors import ConfigurationError, DomainError
from uavnoma.noma import snr_sum_rate
from uavnoma.warmstart import transition_tables
from uavnoma.world import Action, cell_to_coords, distance_3d, is_los, \
    next_cell


class DeterministicMdp:
    """A finite MDP with deterministic transitions and rewards.

    :param next_state: integer array (states, actions) of successor states
    :param reward: array (states, actions) of transition rewards
    """
    __slots__ = ('next_state', 'reward')

    def __init__(self, next_state, reward):
        next_state = np.array(next_state, dtype=int)
        reward = np.array(reward, dtype=float)
        if next_state.ndim != 2 or next_state.shape != reward.shape:
            raise ConfigurationError(
                f"transitions {next_state.shape} and rewards {reward.shape}"
                " must have the same (states, actions) shape")
        n = next_state.shape[0]
        if next_state.size and (next_state.min() < 0 or next_state.max() >= n):
            raise ConfigurationError("successor state out of range")
        if not np.isfinite(reward).all():
            raise ConfigurationError("rewards must be finite")
        self.next_state = next_state
        self.reward = reward

    def __repr__(self):
        return "<{} with {} states, {} actions>".format(
            self.__class__.__name__, *self.next_state.shape)

    @property
    def n_states(self):
        return self.next_state.shape[0]

    @property
    def n_actions(self):
        return self.next_state.shape[1]

    @classmethod
    def from_cell_rewards(cls, grid, field, penalty):
        """Build the grid MDP where moving into a cell earns its reward.

        :param grid: the `~uavnoma.world.GridSpec`
        :param field: the reward of every cell, in flat index order
        :param penalty: the reward added to moves trying to leave the grid
        """
        field = np.asarray(field, dtype=float)
        if field.shape != (grid.n_cells,):
            raise ConfigurationError(
                f"reward field of shape {field.shape} for {grid.n_cells} cells")
        nxt, pen = transition_tables(grid, penalty)
        return cls(nxt, field[nxt] + pen)


OracleResult = namedtuple('OracleResult', 'q values policy iterations')
OracleResult.__doc__ = """The output of `value_iteration_oracle()`.

*q* is the optimal action-value array (states, actions), *values* its row
maxima, *policy* the first maximizing action of each state.
"""


def value_iteration_oracle(mdp, gamma, tol=1e-10, max_iterations=1000000):
    """Solve *mdp* with discount *gamma* by value iteration.

    The Bellman optimality backup is iterated from zero until the sup-norm
    change of the action values is below *tol*.
    """
    if not 0 <= gamma < 1:
        raise DomainError(f"gamma must be in [0, 1), got {gamma}")
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")

    q = np.zeros(mdp.reward.shape)
    iterations = 0
    while True:
        iterations += 1
        new = mdp.reward + gamma * q.max(axis=1)[mdp.next_state]
        change = np.abs(new - q).max() if q.size else 0.0
        q = new
        if change < tol:
            break
        if iterations >= max_iterations:
            raise DomainError(
                f"value iteration not converged in {max_iterations} steps")

    return OracleResult(q, q.max(axis=1), q.argmax(axis=1), iterations)


def optimal_actions(result, tol=1e-9):
    """Return, for every state, the set of actions within *tol* of the best.

    The tolerance is relative to the magnitude of the best value, when above
    one.
    """
    best = result.q.max(axis=1)
    slack = tol * np.maximum(1.0, np.abs(best))
    return [
        frozenset(Action(int(a)) for a in np.flatnonzero(row >= b - s))
        for row, b, s in zip(result.q, best, slack)]


def policy_disagreements(q, result, tol=1e-9, cells=None):
    """Return the cells where the greedy action of *q* is not optimal.

    :param q: a learned `~uavnoma.qlearn.QTable`
    :param result: the `OracleResult` on the same grid
    :param cells: the cells to check, all of them by default
    """
    grid = q.grid
    allowed = optimal_actions(result, tol)
    policy = q.greedy_policy()
    if cells is None:
        cells = grid.cells()
    return [
        cell for cell in cells
        if policy[tuple(cell)] not in allowed[grid.index(cell)]]


def greedy_path(q, start, max_steps=None):
    """Return the cells visited following the greedy policy of *q*.

    The walk stops when a cell repeats or after *max_steps* moves.
    """
    grid = q.grid
    if max_steps is None:
        max_steps = grid.n_cells
    path = [tuple(start)]
    seen = {path[0]}
    for _ in range(max_steps):
        cell, _ = next_cell(path[-1], q.greedy_action(path[-1]), grid)
        if cell in seen:
            break
        path.append(cell)
        seen.add(cell)
    return path


def deterministic_reward_field(scenario, n=1):
    """Return the throughput of every cell at slot *n* without randomness.

    Shadowing and fading are ignored: only the path loss of the LoS or NLoS
    condition is used.
    """
    grid = scenario.grid
    h = scenario.altitude
    users = scenario.user_positions(n)
    rv = np.empty(grid.n_cells)
    for idx, cell in enumerate(grid.cells()):
        x, y = cell_to_coords(cell, grid)
        gains = []
        for w in users:
            cond = Condition.from_flag(
                is_los((x, y, h), (w[0], w[1], 0.0), scenario.obstacles))
            gains.append(realize_gain(
                distance_3d((x, y), w, h), cond, scenario.channel).gain)
        rv[idx] = snr_sum_rate(gains, scenario.tx_power, scenario.noise)
    return rv
