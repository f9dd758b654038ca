#!/usr/bin/env python

# test_warmstart.py - tests for the surrogate training of the Q-table
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
import unittest

import numpy as np

from uavnoma._streams import Streams
from uavnoma.channel import PredictedChannelParams
from uavnoma.errors import ConfigurationError
from uavnoma.oracle import (
    DeterministicMdp, greedy_path, value_iteration_oracle,
    policy_disagreements)
from uavnoma.qlearn import LearningParams
from uavnoma.scenario import load_scenario
from uavnoma.warmstart import (
    MODES, SurrogateSpec, surrogate_reward, surrogate_reward_field,
    transition_tables, train_qtable)
from uavnoma.world import Action, GridSpec, cell_to_coords, is_los

from .testutils import slow, toy_scenario, tower


def full_scale_scenario():
    """A 20x20 grid at 100 m with the default radio, one user at (5, 5)."""
    return toy_scenario(
        half_extent=100, cell_size=10, altitude=100, users=((5.0, 5.0),),
        tx_power=0.2, noise=1e-11)


class SurrogateSpecTests(unittest.TestCase):
    def test_defaults(self):
        spec = SurrogateSpec()
        self.assertEqual(spec.mode, 'plos')
        self.assertEqual(spec.max_episodes, 5000)
        self.assertEqual(spec.episode_slots, 60)
        self.assertEqual(spec.window, 50)
        self.assertEqual(spec.tolerance, 1e-3)
        self.assertEqual(spec.epsilon_decay, 0.995)
        self.assertEqual(spec.epsilon_floor, 0.0)
        self.assertEqual(MODES, ('plos', 'los'))

    def test_validation(self):
        self.assertRaises(ConfigurationError, SurrogateSpec, mode='nlos')
        self.assertRaises(ConfigurationError, SurrogateSpec, max_episodes=-1)
        self.assertRaises(ConfigurationError, SurrogateSpec, episode_slots=1)
        self.assertRaises(ConfigurationError, SurrogateSpec, window=0)
        self.assertRaises(ConfigurationError, SurrogateSpec, tolerance=0)
        self.assertRaises(ConfigurationError, SurrogateSpec, epsilon_decay=0)
        self.assertRaises(
            ConfigurationError, SurrogateSpec, epsilon_floor=1.5)
        self.assertRaises(
            ConfigurationError, SurrogateSpec, user_positions=[])

    def test_frozen_positions(self):
        scenario = toy_scenario(users=((1, 2), (-3, 4)))
        self.assertEqual(
            SurrogateSpec().frozen_positions(scenario),
            ((1.0, 2.0), (-3.0, 4.0)))
        spec = SurrogateSpec(user_positions=[(7, 8)])
        self.assertEqual(spec.frozen_positions(scenario), ((7.0, 8.0),))

    def test_channel(self):
        scenario = toy_scenario()
        self.assertIs(SurrogateSpec().channel(scenario), scenario.predicted)
        pred = PredictedChannelParams(alpha=3)
        self.assertIs(SurrogateSpec(predicted=pred).channel(scenario), pred)


class SurrogateRewardTests(unittest.TestCase):
    def test_user_below(self):
        scenario = full_scale_scenario()
        # cell (10, 10) is centered on the user: d = H = 100 m
        expected = math.log2(1 + 0.2 * 1e-3 * 100 ** -2.3 / 1e-11)
        for mode in MODES:
            r = surrogate_reward((10, 10), SurrogateSpec(mode=mode), scenario)
            self.assertAlmostEqual(r, expected, delta=1e-9)
            self.assertAlmostEqual(r, 8.975, delta=0.01)

    def test_deterministic(self):
        scenario = full_scale_scenario()
        spec = SurrogateSpec()
        self.assertEqual(
            surrogate_reward((3, 17), spec, scenario),
            surrogate_reward((3, 17), spec, scenario))

    def test_los_dominates_plos(self):
        scenario = full_scale_scenario()
        los = surrogate_reward_field(SurrogateSpec(mode='los'), scenario)
        plos = surrogate_reward_field(SurrogateSpec(mode='plos'), scenario)
        self.assertTrue((los >= plos - 1e-12).all())
        self.assertTrue((los > plos).any())

    def test_nearest_cell_is_best(self):
        scenario = full_scale_scenario()
        for mode in MODES:
            field = surrogate_reward_field(SurrogateSpec(mode=mode), scenario)
            self.assertEqual(
                scenario.grid.cell_at(int(field.argmax())), (10, 10))

    def test_obstacles_ignored(self):
        clear = full_scale_scenario()
        blocked = clear.replace(obstacles=[tower(5, 45, 20, 90)])
        spec = SurrogateSpec()
        self.assertTrue(np.array_equal(
            surrogate_reward_field(spec, clear),
            surrogate_reward_field(spec, blocked)))

    def test_field_matches_cells(self):
        scenario = toy_scenario(
            half_extent=30, users=((12, -4), (-20, 7)), tx_power=0.2,
            noise=1e-9, altitude=40)
        for mode in MODES:
            spec = SurrogateSpec(mode=mode)
            field = surrogate_reward_field(spec, scenario)
            for idx, cell in enumerate(scenario.grid.cells()):
                self.assertAlmostEqual(
                    field[idx], surrogate_reward(cell, spec, scenario),
                    delta=1e-10)


class TransitionTablesTests(unittest.TestCase):
    def test_shape(self):
        grid = GridSpec(30, 10)
        nxt, pen = transition_tables(grid, -10)
        self.assertEqual(nxt.shape, (36, 5))
        self.assertEqual(pen.shape, (36, 5))

    def test_corner(self):
        grid = GridSpec(30, 10)
        nxt, pen = transition_tables(grid, -10)
        i = grid.index((0, 0))
        self.assertEqual(nxt[i, Action.HOVER], i)
        self.assertEqual(nxt[i, Action.LEFT], i)
        self.assertEqual(nxt[i, Action.BACKWARD], i)
        self.assertEqual(nxt[i, Action.RIGHT], grid.index((1, 0)))
        self.assertEqual(nxt[i, Action.FORWARD], grid.index((0, 1)))
        self.assertEqual(
            pen[i].tolist(), [0.0, -10.0, 0.0, 0.0, -10.0])

    def test_penalty_count(self):
        grid = GridSpec(30, 10)
        nxt, pen = transition_tables(grid, -3)
        # every border cell has one blocked move, the corners two
        self.assertEqual(int((pen < 0).sum()), 4 * 6)
        self.assertEqual(set(pen.ravel().tolist()), {0.0, -3.0})


class TrainQTableTests(unittest.TestCase):
    def setUp(self):
        # 6x6 grid; cell (3, 3) is centered above the user, at unit SNR
        self.scenario = toy_scenario(
            half_extent=30, users=((5.0, 5.0),), noise=5e-6)
        self.params = LearningParams(alpha=1.0, epsilon0=1.0)

    def test_zero_budget(self):
        spec = SurrogateSpec(max_episodes=0)
        with self.assertLogs('uavnoma.warmstart', 'WARNING'):
            q = train_qtable(self.scenario, spec, self.params, 0)
        self.assertFalse(q.values.any())
        self.assertEqual(q.metadata['episodes'], 0)
        self.assertFalse(q.metadata['converged'])
        self.assertIsNone(q.metadata['max_change'])

    def test_deterministic(self):
        spec = SurrogateSpec(max_episodes=30, episode_slots=20)
        with self.assertLogs('uavnoma.warmstart'):
            q1 = train_qtable(self.scenario, spec, self.params, Streams(3))
            q2 = train_qtable(self.scenario, spec, self.params, Streams(3))
        self.assertEqual(q1, q2)
        self.assertEqual(q1.metadata, q2.metadata)

    def test_uses_own_stream(self):
        spec = SurrogateSpec(max_episodes=30, episode_slots=20)
        s2 = Streams(3)
        s2['policy'].random(100)
        with self.assertLogs('uavnoma.warmstart'):
            q1 = train_qtable(self.scenario, spec, self.params, Streams(3))
            q2 = train_qtable(self.scenario, spec, self.params, s2)
        self.assertEqual(q1, q2)

    def test_convergence_metadata(self):
        spec = SurrogateSpec(
            mode='los', max_episodes=3000, episode_slots=40, epsilon_decay=1)
        with self.assertLogs('uavnoma.warmstart', 'INFO') as cm:
            q = train_qtable(self.scenario, spec, self.params, 1)
        self.assertTrue(q.metadata['converged'])
        self.assertLess(q.metadata['max_change'], 1e-3)
        self.assertGreaterEqual(q.metadata['episodes'], spec.window)
        self.assertLess(q.metadata['episodes'], 3000)
        self.assertEqual(q.metadata['mode'], 'los')
        self.assertIn('converged after', cm.output[0])

    def test_budget_exhausted(self):
        spec = SurrogateSpec(max_episodes=5, episode_slots=10, window=50)
        with self.assertLogs('uavnoma.warmstart', 'WARNING') as cm:
            q = train_qtable(self.scenario, spec, self.params, 1)
        self.assertEqual(q.metadata['episodes'], 5)
        self.assertFalse(q.metadata['converged'])
        self.assertIn('not converged', cm.output[0])

    def test_matches_value_iteration(self):
        grid = self.scenario.grid
        for mode in MODES:
            spec = SurrogateSpec(
                mode=mode, max_episodes=4000, episode_slots=50,
                epsilon_decay=1, tolerance=1e-9)
            with self.assertLogs('uavnoma.warmstart'):
                q = train_qtable(self.scenario, spec, self.params, 11)
            mdp = DeterministicMdp.from_cell_rewards(
                grid, surrogate_reward_field(spec, self.scenario),
                self.params.penalty)
            result = value_iteration_oracle(mdp, self.params.gamma)
            self.assertEqual(policy_disagreements(q, result), [], mode)
            self.assertEqual(q.greedy_action((3, 3)), Action.HOVER)

    @slow
    def test_default_scenario_converges(self):
        scenario = load_scenario('default')
        users = scenario.user_positions(1)
        for seed in range(10):
            with self.assertLogs('uavnoma.warmstart', 'INFO'):
                q = train_qtable(
                    scenario, SurrogateSpec(), LearningParams(), seed)
            self.assertTrue(q.metadata['converged'], seed)
            self.assertLessEqual(q.metadata['episodes'], 5000)

            # the greedy flight ends where the waiting user is in sight
            end = greedy_path(q, scenario.initial_cell)[-1]
            x, y = cell_to_coords(end, scenario.grid)
            self.assertTrue(is_los(
                (x, y, scenario.altitude), (users[0][0], users[0][1], 0.0),
                scenario.obstacles), (seed, end))


def test_suite():
    return unittest.TestLoader().loadTestsFromName(__name__)


if __name__ == "__main__":
    unittest.main()
