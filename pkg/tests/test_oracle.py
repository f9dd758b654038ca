#!/usr/bin/env python

# test_oracle.py - tests for value iteration on deterministic MDPs
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

import unittest

import numpy as np

from uavnoma.errors import ConfigurationError, DomainError
from uavnoma.oracle import (
    DeterministicMdp, value_iteration_oracle, optimal_actions,
    policy_disagreements, greedy_path, deterministic_reward_field)
from uavnoma.qlearn import QTable
from uavnoma.world import Action, GridSpec

from .testutils import toy_scenario, tower


def two_states():
    # state 0 can stay for 0 or move for 1; state 1 can stay for 2
    return DeterministicMdp([[0, 1], [1, 0]], [[0.0, 1.0], [2.0, 0.0]])


class DeterministicMdpTests(unittest.TestCase):
    def test_shape(self):
        mdp = two_states()
        self.assertEqual(mdp.n_states, 2)
        self.assertEqual(mdp.n_actions, 2)
        self.assertEqual(repr(mdp), "<DeterministicMdp with 2 states, 2 actions>")

    def test_bad_shape(self):
        self.assertRaises(
            ConfigurationError, DeterministicMdp, [[0, 1]], [[0.0]])
        self.assertRaises(ConfigurationError, DeterministicMdp, [0, 1], [0, 1])

    def test_bad_successor(self):
        self.assertRaises(
            ConfigurationError, DeterministicMdp, [[0, 2], [1, 0]],
            [[0, 0], [0, 0]])
        self.assertRaises(
            ConfigurationError, DeterministicMdp, [[0, -1], [1, 0]],
            [[0, 0], [0, 0]])

    def test_bad_reward(self):
        self.assertRaises(
            ConfigurationError, DeterministicMdp, [[0, 1], [1, 0]],
            [[0, np.nan], [0, 0]])

    def test_from_cell_rewards(self):
        grid = GridSpec(10, 10)
        field = [1.0, 2.0, 3.0, 4.0]
        mdp = DeterministicMdp.from_cell_rewards(grid, field, -10)
        self.assertEqual(mdp.n_states, 4)
        self.assertEqual(mdp.n_actions, 5)
        # cell (0, 0): hover, left (blocked), right, forward, backward
        self.assertEqual(mdp.next_state[0].tolist(), [0, 0, 2, 1, 0])
        self.assertEqual(mdp.reward[0].tolist(), [1.0, -9.0, 3.0, 2.0, -9.0])

    def test_field_shape(self):
        self.assertRaises(
            ConfigurationError, DeterministicMdp.from_cell_rewards,
            GridSpec(10, 10), [1.0, 2.0, 3.0], -10)


class ValueIterationTests(unittest.TestCase):
    def test_myopic(self):
        mdp = two_states()
        result = value_iteration_oracle(mdp, 0.0)
        self.assertTrue(np.array_equal(result.q, mdp.reward))
        self.assertEqual(result.values.tolist(), [1.0, 2.0])
        self.assertEqual(result.policy.tolist(), [1, 0])

    def test_closed_form(self):
        result = value_iteration_oracle(two_states(), 0.9)
        v1 = 2 / (1 - 0.9)
        v0 = 1 + 0.9 * v1
        self.assertAlmostEqual(result.values[1], v1, delta=1e-8)
        self.assertAlmostEqual(result.values[0], v0, delta=1e-8)
        self.assertAlmostEqual(result.q[0, 0], 0.9 * v0, delta=1e-8)
        self.assertAlmostEqual(result.q[1, 1], 0.9 * v0, delta=1e-8)
        self.assertEqual(result.policy.tolist(), [1, 0])
        self.assertGreater(result.iterations, 100)

    def test_shifted(self):
        mdp = DeterministicMdp.from_cell_rewards(
            GridSpec(25, 10), deterministic_reward_field(toy_scenario()), -10)
        base = value_iteration_oracle(mdp, 0.9)
        for c in (-3.0, 7.5):
            shifted = value_iteration_oracle(
                DeterministicMdp(mdp.next_state, mdp.reward + c), 0.9)
            self.assertEqual(shifted.policy.tolist(), base.policy.tolist())
            self.assertTrue(np.allclose(
                shifted.values, base.values + c / (1 - 0.9), atol=1e-7))

    def test_bad_parameters(self):
        mdp = two_states()
        self.assertRaises(DomainError, value_iteration_oracle, mdp, 1.0)
        self.assertRaises(DomainError, value_iteration_oracle, mdp, -0.1)
        self.assertRaises(DomainError, value_iteration_oracle, mdp, 0.9, 0)
        self.assertRaises(
            DomainError, value_iteration_oracle, mdp, 0.99, 1e-10, 3)


class OptimalActionsTests(unittest.TestCase):
    def test_ties(self):
        grid = GridSpec(10, 10)
        mdp = DeterministicMdp.from_cell_rewards(grid, np.zeros(4), -10)
        allowed = optimal_actions(value_iteration_oracle(mdp, 0.9))
        self.assertEqual(
            allowed[grid.index((0, 0))],
            {Action.HOVER, Action.RIGHT, Action.FORWARD})
        self.assertEqual(
            allowed[grid.index((1, 1))],
            {Action.HOVER, Action.LEFT, Action.BACKWARD})

    def test_unique(self):
        result = value_iteration_oracle(two_states(), 0.9)
        self.assertEqual(optimal_actions(result), [{1}, {0}])


class PolicyTests(unittest.TestCase):
    def setUp(self):
        self.scenario = toy_scenario()
        self.grid = self.scenario.grid
        mdp = DeterministicMdp.from_cell_rewards(
            self.grid, deterministic_reward_field(self.scenario), -10)
        self.result = value_iteration_oracle(mdp, 0.9)

    def test_reward_field(self):
        field = deterministic_reward_field(self.scenario)
        self.assertEqual(field.shape, (25,))
        self.assertAlmostEqual(field[self.grid.index((2, 2))], 1.0, delta=1e-12)
        self.assertEqual(int(field.argmax()), self.grid.index((2, 2)))

    def test_reward_field_obstacles(self):
        blocked = self.scenario.replace(obstacles=[tower(-10, -10, 6, 8)])
        clear = deterministic_reward_field(self.scenario)
        field = deterministic_reward_field(blocked)
        # the same channel on both conditions: occlusion changes nothing
        self.assertTrue(np.array_equal(field, clear))

    def test_oracle_table_agrees(self):
        q = QTable(self.grid, self.result.q)
        self.assertEqual(policy_disagreements(q, self.result), [])

    def test_disagreement(self):
        q = QTable(self.grid, self.result.q)
        q.row((2, 2))[Action.LEFT] += 1.0
        self.assertEqual(policy_disagreements(q, self.result), [(2, 2)])
        self.assertEqual(
            policy_disagreements(q, self.result, cells=[(0, 0), (4, 4)]), [])

    def test_greedy_path(self):
        q = QTable(self.grid, self.result.q)
        path = greedy_path(q, (0, 0))
        self.assertEqual(path[0], (0, 0))
        self.assertEqual(path[-1], (2, 2))
        self.assertEqual(len(path), 5)
        self.assertEqual(greedy_path(q, (0, 0), max_steps=2), path[:3])
        self.assertEqual(greedy_path(q, (2, 2)), [(2, 2)])


def test_suite():
    return unittest.TestLoader().loadTestsFromName(__name__)


if __name__ == "__main__":
    unittest.main()
