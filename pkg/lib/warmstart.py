"""Q-table initialization from a predicted channel model

Before flying, the UAV trains its Q-table against a surrogate world where
the users stand at their initial positions and the channel is the average
predicted by `~uavnoma.channel.predicted_gain()`. The surrogate ignores the
obstacles: it can use the probabilistic LoS model (mode ``plos``) or assume
every link in line of sight (mode ``los``).

Training is episodic: every episode starts from the UAV initial cell, and
stops when the table has stopped changing or the budget is exhausted.
"""

# uavnoma/warmstart.py - surrogate training of the initial Q-table
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

import math
import logging
from collections import deque

import numpy as np

from uavnoma._record import Record
from uavnoma._streams import as_streams
from uavnoma.channel import predicted_gain, predicted_gains
from uavnoma.errors import ConfigurationError
from uavnoma.noma import snr_sum_rate
from uavnoma.qlearn import QTable, _select, _update
from uavnoma.world import N_ACTIONS, Action, cell_to_coords, distance_3d, \
    next_cell

logger = logging.getLogger(__name__)

MODES = ('plos', 'los')


class SurrogateSpec(Record):
    """How to build and train against the surrogate world.

    :param mode: ``plos`` for the probabilistic LoS channel, ``los`` to
        force every link in line of sight
    :param predicted: the `~uavnoma.channel.PredictedChannelParams`;
        `!None` to use the scenario's ones
    :param user_positions: the frozen users' positions; `!None` to use the
        scenario's positions at slot 1
    :param max_episodes: the training budget, in episodes
    :param episode_slots: the slots in an episode
    :param window: the number of episodes *W* the table change is measured on
    :param tolerance: the change *tau* below which training has converged
    :param epsilon_decay: the per-episode decay of the exploration
    :param epsilon_floor: the lowest exploration probability
    """
    __slots__ = (
        'mode', 'predicted', 'user_positions', 'max_episodes',
        'episode_slots', 'window', 'tolerance', 'epsilon_decay',
        'epsilon_floor')

    def __init__(self, mode='plos', predicted=None, user_positions=None,
            max_episodes=5000, episode_slots=60, window=50, tolerance=1e-3,
            epsilon_decay=0.995, epsilon_floor=0.0):
        if mode not in MODES:
            raise ConfigurationError(
                f"surrogate mode must be one of {', '.join(MODES)},"
                f" got {mode!r}")
        if user_positions is not None:
            user_positions = tuple(
                (float(x), float(y)) for x, y in user_positions)
            if not user_positions:
                raise ConfigurationError("no frozen user positions")
        max_episodes = int(max_episodes)
        episode_slots = int(episode_slots)
        window = int(window)
        tolerance = float(tolerance)
        epsilon_decay = float(epsilon_decay)
        epsilon_floor = float(epsilon_floor)
        if max_episodes < 0:
            raise ConfigurationError(
                f"the training budget must be nonnegative, got {max_episodes}")
        if episode_slots < 2:
            raise ConfigurationError(
                f"episodes need at least 2 slots, got {episode_slots}")
        if window < 1:
            raise ConfigurationError(
                f"the convergence window must be positive, got {window}")
        if not tolerance > 0:
            raise ConfigurationError(
                f"the convergence tolerance must be positive, got {tolerance}")
        if not 0 < epsilon_decay <= 1:
            raise ConfigurationError(
                f"epsilon_decay must be in (0, 1], got {epsilon_decay}")
        if not 0 <= epsilon_floor <= 1:
            raise ConfigurationError(
                f"epsilon_floor must be in [0, 1], got {epsilon_floor}")
        self._set(
            mode=mode, predicted=predicted, user_positions=user_positions,
            max_episodes=max_episodes, episode_slots=episode_slots,
            window=window, tolerance=tolerance, epsilon_decay=epsilon_decay,
            epsilon_floor=epsilon_floor)

    def frozen_positions(self, scenario):
        """The users' positions the surrogate uses for *scenario*."""
        if self.user_positions is not None:
            return self.user_positions
        return tuple(scenario.user_positions(1))

    def channel(self, scenario):
        """The predicted channel parameters used for *scenario*."""
        return self.predicted if self.predicted is not None \
            else scenario.predicted

    @property
    def los_probability(self):
        """The LoS probability override of the mode (`!None` for plos)."""
        return 1.0 if self.mode == 'los' else None


def surrogate_reward(cell, spec, scenario):
    """Return the throughput the surrogate predicts with the UAV in *cell*."""
    x, y = cell_to_coords(cell, scenario.grid)
    h = scenario.altitude
    params = spec.channel(scenario)
    p = spec.los_probability
    gains = [
        predicted_gain(distance_3d((x, y), w, h), h, params, p=p)
        for w in spec.frozen_positions(scenario)]
    return snr_sum_rate(gains, scenario.tx_power, scenario.noise)


def surrogate_reward_field(spec, scenario):
    """Return `surrogate_reward()` of every cell, in flat index order."""
    centers = scenario.grid.centers()
    users = np.asarray(spec.frozen_positions(scenario), dtype=float)
    h = scenario.altitude
    d = np.sqrt(
        ((centers[:, None, :] - users[None, :, :]) ** 2).sum(axis=2) + h * h)
    gains = predicted_gains(
        d, h, spec.channel(scenario), p=spec.los_probability)
    return np.log2(1.0 + scenario.tx_power * gains.sum(axis=1) / scenario.noise)


def transition_tables(grid, penalty):
    """Return the next-cell index and the penalty of every (cell, action).

    Both arrays have shape ``(grid.n_cells, 5)``.
    """
    nxt = np.empty((grid.n_cells, N_ACTIONS), dtype=int)
    pen = np.zeros((grid.n_cells, N_ACTIONS))
    for idx, cell in enumerate(grid.cells()):
        for a in Action:
            target, violated = next_cell(cell, a, grid)
            nxt[idx, a] = grid.index(target)
            if violated:
                pen[idx, a] = penalty
    return nxt, pen


def train_qtable(scenario, spec, params, rng):
    """Train a Q-table on the surrogate world of *scenario*.

    :param spec: the `SurrogateSpec`
    :param params: the `~uavnoma.qlearn.LearningParams`; the exploration
        starts from *epsilon0* and decays per episode as the *spec* says
    :param rng: the run's `~uavnoma._streams.Streams` or its seed; the
        ``warmstart-<mode>`` stream is used
    :return: the trained `~uavnoma.qlearn.QTable`, with `!metadata` keys
        ``episodes``, ``converged``, ``mode`` and ``max_change``

    The reward of a move is the surrogate throughput of the destination cell
    plus the boundary penalty if the move tried to leave the grid.
    """
    grid = scenario.grid
    policy = as_streams(rng)[f'warmstart-{spec.mode}']
    field = surrogate_reward_field(spec, scenario).tolist()
    nxt, pen = transition_tables(grid, params.penalty)
    nxt = nxt.tolist()
    pen = pen.tolist()

    q = QTable.zeros(grid)
    values = q.values
    alpha = params.alpha
    gamma = params.gamma
    start = grid.index(scenario.initial_cell)
    history = deque([values.copy()], maxlen=spec.window + 1)
    converged = False
    max_change = math.inf
    episode = 0

    while episode < spec.max_episodes:
        episode += 1
        eps = max(
            spec.epsilon_floor,
            params.epsilon0 * spec.epsilon_decay ** (episode - 1))
        s = start
        for _ in range(spec.episode_slots - 1):
            a = _select(values[s], eps, policy)
            s1 = nxt[s][a]
            _update(values, s, a, field[s1] + pen[s][a], s1, alpha, gamma)
            s = s1

        history.append(values.copy())
        if episode >= spec.window:
            max_change = float(np.abs(values - history[0]).max())
            if max_change < spec.tolerance:
                converged = True
                break

    q.metadata.update(
        episodes=episode, converged=converged, mode=spec.mode,
        max_change=max_change if math.isfinite(max_change) else None)
    if converged:
        logger.info(
            "warm start (%s) converged after %s episodes", spec.mode, episode)
    else:
        logger.warning(
            "warm start (%s) not converged after %s episodes",
            spec.mode, episode)
    return q
