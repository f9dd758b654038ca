"""Scenario definition and loading

A scenario is the whole reproducible input of a simulation: the grid, the
obstacles, the users' tracks, the UAV altitude and initial location, the
radio budget and the channel parameters.

Scenarios are read from JSON files; the name ``default`` selects the
scenario shipped with the package. See :doc:`scenario` for the schema.
"""

# uavnoma/scenario.py - scenario objects and JSON loader
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

from uavnoma._record import Record
from uavnoma._config import Section, as_point, load_json, located
from uavnoma.channel import (
    ConditionParams, SegmentedChannelParams, PredictedChannelParams,
    dbm_to_watt)
from uavnoma.errors import ConfigurationError
from uavnoma.world import (
    GridSpec, Obstacle, UserTrack, UavState, cell_to_coords, coords_to_cell)

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
DEFAULT_SCENARIO = os.path.join(DATA_DIR, 'default_scenario.json')

# Distance from a cell center tolerated for the initial UAV location (m)
_CENTER_TOL = 1e-6


class Scenario(Record):
    """A complete simulation input.

    :param grid: the `~uavnoma.world.GridSpec`
    :param altitude: the UAV flight altitude (m)
    :param initial_cell: the UAV cell at slot 1
    :param obstacles: a sequence of `~uavnoma.world.Obstacle`
    :param users: a sequence of `~uavnoma.world.UserTrack`
    :param tx_power: the users' transmit power (W)
    :param noise: the receiver noise power (W)
    :param channel: the realized `~uavnoma.channel.SegmentedChannelParams`
    :param predicted: the `~uavnoma.channel.PredictedChannelParams` used by
        the model-based controllers
    :param name: a label for the scenario
    """
    __slots__ = (
        'grid', 'altitude', 'initial_cell', 'obstacles', 'users',
        'tx_power', 'noise', 'channel', 'predicted', 'name')

    def __init__(self, grid, altitude, initial_cell, obstacles, users,
            tx_power, noise, channel=None, predicted=None, name=None):
        altitude = float(altitude)
        tx_power = float(tx_power)
        noise = float(noise)
        initial_cell = tuple(int(c) for c in initial_cell)
        obstacles = tuple(obstacles)
        users = tuple(users)
        if channel is None:
            channel = SegmentedChannelParams()
        if predicted is None:
            predicted = PredictedChannelParams()

        if not altitude > 0:
            raise ConfigurationError(
                f"UAV altitude must be positive, got {altitude}")
        if not grid.contains(initial_cell):
            raise ConfigurationError(
                f"initial cell {initial_cell} outside the grid")
        if not users:
            raise ConfigurationError("the scenario needs at least one user")
        if not tx_power > 0:
            raise ConfigurationError(
                f"transmit power must be positive, got {tx_power}")
        if not noise > 0:
            raise ConfigurationError(
                f"noise power must be positive, got {noise}")
        for box in obstacles:
            if not box.height < altitude:
                raise ConfigurationError(
                    f"obstacle {box!r} not lower than the UAV altitude")
        for k, track in enumerate(users):
            for slot, point in track.waypoints:
                if not grid.in_area(point):
                    raise ConfigurationError(
                        f"user {k} at slot {slot} outside the area: {point}")
            if not track.max_step() < grid.cell_size:
                raise ConfigurationError(
                    f"user {k} moves {track.max_step():.3f} m in a slot,"
                    f" not slower than the UAV ({grid.cell_size} m)")

        self._set(
            grid=grid, altitude=altitude, initial_cell=initial_cell,
            obstacles=obstacles, users=users, tx_power=tx_power, noise=noise,
            channel=channel, predicted=predicted, name=name)

    @property
    def n_users(self):
        return len(self.users)

    @property
    def initial_state(self):
        """The `~uavnoma.world.UavState` at slot 1."""
        return UavState(self.initial_cell, self.altitude)

    @property
    def initial_position(self):
        """The horizontal coordinates of the UAV at slot 1."""
        return cell_to_coords(self.initial_cell, self.grid)

    def user_positions(self, n):
        """Return the positions of all the users at slot *n*."""
        return [track.position(n) for track in self.users]


def load_scenario(source):
    """Load a `Scenario` from a JSON file.

    :param source: a file name, or ``default`` for the packaged scenario
    """
    filename = DEFAULT_SCENARIO if source == 'default' else source
    logger.debug("loading scenario from %s", filename)
    return scenario_from_section(load_json(filename))


def scenario_from_dict(data, filename=None):
    """Build a `Scenario` from the parsed JSON document *data*."""
    return scenario_from_section(Section(data, filename=filename))


def scenario_from_section(doc):
    doc.check_keys((
        'name', 'description', 'grid', 'uav', 'radio', 'channel',
        'predicted', 'obstacles', 'users'))

    sec = doc.section('grid')
    sec.check_keys(('half_extent', 'cell_size'))
    grid = located(sec, lambda: GridSpec(
        sec.number('half_extent'), sec.number('cell_size')))

    sec = doc.section('uav')
    sec.check_keys(('altitude', 'initial_position'))
    altitude = sec.number('altitude')
    start = sec.point('initial_position')
    if not grid.in_area(start):
        raise sec.error("initial position outside the area",
            'initial_position')
    initial_cell = coords_to_cell(start, grid)
    center = cell_to_coords(initial_cell, grid)
    if max(abs(center[0] - start[0]), abs(center[1] - start[1])) > _CENTER_TOL:
        raise sec.error(
            f"initial position {start} is not a cell center", 'initial_position')

    tx_power, noise = _radio(doc.section('radio'))
    channel = _channel(doc.section('channel', None))
    predicted = _predicted(doc.section('predicted', None))

    obstacles = []
    for sec in doc.sections('obstacles', []):
        sec.check_keys(('x', 'y', 'height', 'name'))
        x = sec.point('x')
        y = sec.point('y')
        obstacles.append(located(
            sec, lambda: Obstacle(x[0], x[1], y[0], y[1], sec.number('height'))))

    users = []
    for sec in doc.sections('users'):
        sec.check_keys(('name', 'waypoints'))
        waypoints = []
        for path, item in sec.items('waypoints'):
            if not isinstance(item, list) or len(item) != 2:
                raise ConfigurationError(
                    f"expected [slot, [x, y]], got {item!r}",
                    filename=doc.filename, path=path)
            waypoints.append(
                (item[0], as_point(item[1], doc.filename, f"{path}[1]")))
        name = sec.string('name', None)
        users.append(located(sec, lambda: UserTrack(waypoints, name=name)))

    return located(doc, lambda: Scenario(
        grid, altitude, initial_cell, obstacles, users, tx_power, noise,
        channel=channel, predicted=predicted, name=doc.string('name', None)))


def _radio(sec):
    sec.check_keys(('tx_power_dbm', 'tx_power_w', 'noise_dbm', 'noise_w'))
    if 'tx_power_w' in sec:
        tx_power = sec.number('tx_power_w')
    else:
        tx_power = dbm_to_watt(sec.number('tx_power_dbm'))
    if 'noise_w' in sec:
        noise = sec.number('noise_w')
    else:
        noise = dbm_to_watt(sec.number('noise_dbm'))
    return tx_power, noise


def _channel(sec):
    if sec is None:
        return SegmentedChannelParams()
    sec.check_keys(('los', 'nlos'))
    default = SegmentedChannelParams()
    conds = {}
    for key in ('los', 'nlos'):
        csec = sec.section(key, None)
        if csec is None:
            conds[key] = getattr(default, key)
            continue
        csec.check_keys(('beta_db', 'alpha', 'sigma_db', 'k_factor_db'))
        base = getattr(default, key)
        # null disables the fading
        if 'k_factor_db' in csec and csec.get('k_factor_db') is None:
            k_factor = None
        else:
            k_factor = csec.number('k_factor_db', base.k_factor_db)
        conds[key] = located(csec, lambda: ConditionParams(
            csec.number('beta_db', base.beta_db),
            csec.number('alpha', base.alpha),
            csec.number('sigma_db', base.sigma_db),
            k_factor))
    return SegmentedChannelParams(**conds)


def _predicted(sec):
    if sec is None:
        return PredictedChannelParams()
    sec.check_keys(('alpha', 'beta_db', 'eta', 'los_c', 'los_d'))
    return located(sec, lambda: PredictedChannelParams(
        **{k: sec.number(k) for k in sec.keys()}))
