"""Trajectory learning for a UAV relaying uplink NOMA users

uavnoma simulates a UAV flying over a grid above a city block and serving
ground users who transmit simultaneously with power-domain NOMA. The UAV
picks its next move with tabular Q-learning, optionally warm-started from
a cheap surrogate model of the radio map, and is compared with a heuristic
controller based on the predicted channel.

:Groups:
  * `Geometry`: GridSpec, Obstacle, UserTrack, Action
  * `Radio`: SegmentedChannelParams, PredictedChannelParams, sum_rate
  * `Learning`: QTable, LearningParams, run_online, train_qtable
  * `Experiments`: load_scenario, load_experiment, run_experiment
"""
# uavnoma/__init__.py - initialization of the uavnoma package
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

__version__ = '0.1.0'

from uavnoma.errors import (                        # noqa
    Error, ConfigurationError, DomainError, InternalError)

from uavnoma.world import (                         # noqa
    GridSpec, Obstacle, UserTrack, UavState, Action,
    next_cell, apply_action, cell_to_coords, coords_to_cell, is_los)

from uavnoma.channel import (                       # noqa
    Condition, ConditionParams, SegmentedChannelParams,
    PredictedChannelParams, realize_gain, predicted_gain, p_los)

from uavnoma.noma import (                          # noqa
    UplinkSnapshot, DecodingOrder, per_user_rates, sum_rate)

from uavnoma.qlearn import (                        # noqa
    QTable, LearningParams, EpisodeTrace, bellman_update, select_action,
    epsilon_at, run_online)

from uavnoma.warmstart import SurrogateSpec, train_qtable   # noqa
from uavnoma.baseline import solve_p2, run_heuristic        # noqa
from uavnoma.scenario import Scenario, load_scenario        # noqa
from uavnoma.harness import (                       # noqa
    ExperimentConfig, load_experiment, run_experiment)
