"""Heuristic maneuver based on the predicted channel

At every slot the UAV looks for the cell maximizing the sum rate predicted
by the probabilistic LoS model for the current users' positions, and takes
one step toward it.
"""

# uavnoma/baseline.py - model-based heuristic controller
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

import logging

import numpy as np

from uavnoma._streams import as_streams
from uavnoma.channel import predicted_gains
from uavnoma.environment import Environment
from uavnoma.errors import InternalError
from uavnoma.qlearn import TraceRecorder
from uavnoma.world import Action, next_cell

logger = logging.getLogger(__name__)


def predicted_rates(user_positions, grid, pred, power, noise, altitude,
        centers=None):
    """Return the predicted sum rate of every cell, in flat index order."""
    if centers is None:
        centers = grid.centers()
    users = np.asarray(user_positions, dtype=float).reshape(-1, 2)
    d = np.sqrt(
        ((centers[:, None, :] - users[None, :, :]) ** 2).sum(axis=2)
        + altitude * altitude)
    gains = predicted_gains(d, altitude, pred)
    return np.log2(1.0 + power * gains.sum(axis=1) / noise)


def solve_p2(user_positions, grid, pred, power, noise, altitude,
        centers=None):
    """Return the cell with the best predicted sum rate for the users.

    :param user_positions: the users' current horizontal positions
    :param grid: the `~uavnoma.world.GridSpec` searched
    :param pred: the `~uavnoma.channel.PredictedChannelParams`
    :param power: the users' transmit power (W)
    :param noise: the noise power (W)
    :param altitude: the UAV altitude (m)
    :param centers: the precomputed `!grid.centers()`, if available

    Every cell is evaluated; ties go to the smallest ``(i, j)``.
    """
    rates = predicted_rates(
        user_positions, grid, pred, power, noise, altitude, centers)
    return grid.cell_at(int(np.argmax(rates)))


def step_toward(current, target):
    """Return the action bringing *current* one step closer to *target*.

    The larger of the two coordinate gaps is reduced first, the i gap on
    equality. Both cells must be on the same grid, so the action never
    leaves it.
    """
    di = target[0] - current[0]
    dj = target[1] - current[1]
    if di == 0 and dj == 0:
        return Action.HOVER
    if abs(di) >= abs(dj):
        return Action.RIGHT if di > 0 else Action.LEFT
    return Action.FORWARD if dj > 0 else Action.BACKWARD


def run_heuristic(scenario, rng, n_slots):
    """Fly the UAV for *n_slots* slots with the heuristic controller.

    :param rng: the run's `~uavnoma._streams.Streams` or its seed; only the
        channel streams are used
    :rtype: `~uavnoma.qlearn.EpisodeTrace`
    """
    grid = scenario.grid
    env = Environment(scenario, as_streams(rng), n_slots)
    centers = grid.centers()
    recorder = TraceRecorder()

    cell = scenario.initial_cell
    for n in range(1, n_slots + 1):
        obs = env.observe(n, cell)
        target = solve_p2(
            env.positions[n - 1], grid, scenario.predicted,
            scenario.tx_power, scenario.noise, scenario.altitude, centers)
        action = step_toward(cell, target)
        recorder.append(cell, action, obs.throughput, obs)
        cell, violated = next_cell(cell, action, grid)
        if violated:
            raise InternalError(f"heuristic step {action!r} left the grid")

    trace = recorder.build(env)
    logger.debug(
        "heuristic run of %s slots: average throughput %.4f bps/Hz",
        n_slots, trace.average_throughput)
    return trace
