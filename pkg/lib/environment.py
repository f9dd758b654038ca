"""Slot-by-slot realization of the radio environment of a run
"""

# uavnoma/environment.py - per-slot observation of the users' links
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

from uavnoma._streams import as_streams
from uavnoma.channel import Condition, LinkSampler
from uavnoma.errors import DomainError
from uavnoma.noma import snr_sum_rate
from uavnoma.world import cell_to_coords, distance_3d, is_los

SlotObservation = namedtuple(
    'SlotObservation', 'throughput links positions')
SlotObservation.__doc__ = """What the UAV measures in a slot.

The sum-rate *throughput* (bps/Hz), the `~uavnoma.channel.LinkGain` of every
user and the users' horizontal *positions*.
"""


class Environment:
    """The users and their channels over the *n_slots* slots of a run.

    :param scenario: the `~uavnoma.scenario.Scenario` simulated
    :param rng: the run's `~uavnoma._streams.Streams` or its seed
    :param n_slots: the horizon of the run

    The users' positions and the channel randomness are fixed when the
    environment is created: two controllers observing the same environment
    from the same cell at the same slot see the same gains.
    """
    def __init__(self, scenario, rng, n_slots):
        if n_slots < 1:
            raise DomainError(f"the horizon must be at least 1 slot: {n_slots}")
        self.scenario = scenario
        self.n_slots = n_slots
        streams = as_streams(rng)
        self._positions = np.stack(
            [track.positions(n_slots) for track in scenario.users], axis=1)
        self._pos_list = self._positions.tolist()
        self._sampler = LinkSampler(
            scenario.channel, streams, n_slots, scenario.n_users)
        self._centers = {}

    @property
    def positions(self):
        """The users' positions, array of shape (n_slots, n_users, 2)."""
        return self._positions

    def uav_position(self, cell):
        try:
            return self._centers[cell]
        except KeyError:
            rv = self._centers[cell] = cell_to_coords(cell, self.scenario.grid)
            return rv

    def observe(self, n, cell):
        """Realize the links of slot *n* with the UAV in *cell*."""
        if not 1 <= n <= self.n_slots:
            raise DomainError(f"slot {n} outside the horizon 1..{self.n_slots}")
        sc = self.scenario
        h = sc.altitude
        x, y = self.uav_position(tuple(cell))
        users = self._pos_list[n - 1]
        links = []
        for k, (ux, uy) in enumerate(users):
            d = distance_3d((x, y), (ux, uy), h)
            cond = Condition.from_flag(
                is_los((x, y, h), (ux, uy, 0.0), sc.obstacles))
            links.append(self._sampler.gain(n, k, d, cond))
        throughput = snr_sum_rate(
            [link.gain for link in links], sc.tx_power, sc.noise)
        return SlotObservation(throughput, links, users)
