#!/usr/bin/env python

# test_channel.py - tests for the uavnoma.channel module
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
import pickle
import unittest

import numpy as np

from uavnoma._streams import Streams
from uavnoma.channel import (
    Condition, ConditionParams, SegmentedChannelParams, PredictedChannelParams,
    LinkGain, LinkSampler, db_to_linear, dbm_to_watt,
    elevation_angle, p_los, predicted_gain, predicted_gains, draw_shadowing,
    draw_fading, realize_gain)
from uavnoma.errors import ConfigurationError, DomainError

from .testutils import slow


class UnitsTests(unittest.TestCase):
    def test_db(self):
        self.assertAlmostEqual(db_to_linear(-30), 1e-3, places=18)
        self.assertAlmostEqual(db_to_linear(13), 19.952623149688797, places=12)

    def test_dbm(self):
        self.assertAlmostEqual(dbm_to_watt(-80), 1e-11, delta=1e-25)
        self.assertAlmostEqual(dbm_to_watt(23), 0.19952623, places=8)
        self.assertAlmostEqual(dbm_to_watt(30), 1.0, places=12)


class ParamsTests(unittest.TestCase):
    def test_defaults(self):
        p = SegmentedChannelParams()
        self.assertEqual(p.los, ConditionParams(-30, 2, 2, 15))
        self.assertEqual(p.nlos, ConditionParams(-40, 4, 5, 0))
        self.assertIs(p[Condition.LOS], p.los)
        self.assertIs(p[Condition.NLOS], p.nlos)
        self.assertFalse(p.deterministic)

    def test_predicted_defaults(self):
        p = PredictedChannelParams()
        self.assertEqual(
            p.astuple(), (2.3, -30.0, 0.1, 10.0, 0.6))
        self.assertAlmostEqual(p.beta, 1e-3, places=18)

    def test_validation(self):
        self.assertRaises(ConfigurationError, ConditionParams, -30, 0)
        self.assertRaises(ConfigurationError, ConditionParams, -30, 2, -1)
        self.assertRaises(
            ConfigurationError, ConditionParams, float('nan'), 2)
        self.assertRaises(
            ConfigurationError, ConditionParams, -30, 2, 0, float('inf'))
        self.assertRaises(ConfigurationError, PredictedChannelParams, eta=1)
        self.assertRaises(ConfigurationError, PredictedChannelParams, eta=0)
        self.assertRaises(ConfigurationError, PredictedChannelParams, los_c=0)

    def test_read_only(self):
        p = ConditionParams(-30, 2)
        with self.assertRaises(AttributeError):
            p.alpha = 3

    def test_replace(self):
        p = ConditionParams(-30, 2, 2, 15)
        self.assertEqual(
            p.replace(k_factor_db=None), ConditionParams(-30, 2, 2, None))
        self.assertRaises(ConfigurationError, p.replace, alpha=-1)
        self.assertRaises(TypeError, p.replace, beta=3)

    def test_pickle(self):
        p = SegmentedChannelParams()
        self.assertEqual(pickle.loads(pickle.dumps(p)), p)

    def test_deterministic(self):
        self.assertTrue(ConditionParams(-30, 2).deterministic)
        self.assertFalse(ConditionParams(-30, 2, 0, 15).deterministic)
        self.assertFalse(ConditionParams(-30, 2, 1).deterministic)


class RealizeGainTests(unittest.TestCase):
    def setUp(self):
        self.params = SegmentedChannelParams()

    def test_los_path_loss(self):
        g = realize_gain(100, Condition.LOS, self.params)
        self.assertIsInstance(g, LinkGain)
        self.assertAlmostEqual(g.gain, 1e-7, delta=1e-20)
        self.assertTrue(g.los)
        self.assertEqual(g.distance, 100)

    def test_nlos_path_loss(self):
        g = realize_gain(100, Condition.NLOS, self.params)
        self.assertAlmostEqual(g.gain, 1e-12, delta=1e-25)
        self.assertFalse(g.los)

    def test_random(self):
        rng = np.random.default_rng(1)
        gains = [
            realize_gain(100, Condition.LOS, self.params, rng).gain
            for i in range(100)]
        self.assertTrue(all(g > 0 for g in gains))
        self.assertGreater(len(set(gains)), 90)

    def test_deterministic_params_ignore_rng(self):
        cond = ConditionParams(-30, 2)
        params = SegmentedChannelParams(los=cond, nlos=cond)
        g = realize_gain(50, Condition.NLOS, params, np.random.default_rng(0))
        self.assertAlmostEqual(g.gain, 1e-3 / 2500, delta=1e-20)

    def test_bad_distance(self):
        self.assertRaises(DomainError, realize_gain, 0, Condition.LOS,
            self.params)
        self.assertRaises(DomainError, realize_gain, -1, Condition.LOS,
            self.params)


class PLosTests(unittest.TestCase):
    def test_angle(self):
        self.assertAlmostEqual(elevation_angle(100, 100), 90.0, places=12)
        self.assertAlmostEqual(
            elevation_angle(200, 100), 30.0, places=10)
        self.assertRaises(DomainError, elevation_angle, 99, 100)
        self.assertRaises(DomainError, elevation_angle, 100, 0)

    def test_at_c(self):
        d = 100 / math.sin(math.radians(10))
        self.assertAlmostEqual(p_los(d, 100, 10, 0.6), 1 / 11, delta=1e-12)

    def test_overhead(self):
        self.assertAlmostEqual(p_los(100, 100, 10, 0.6), 1.0, delta=1e-12)

    def test_flat_shape(self):
        for d in (100, 150, 1000):
            self.assertAlmostEqual(p_los(d, 100, 10, 1e-300), 1 / 11,
                delta=1e-12)

    def test_monotone(self):
        ds = np.linspace(100, 2000, 500)
        p = [p_los(d, 100, 10, 0.6) for d in ds]
        self.assertTrue(all(a >= b for a, b in zip(p, p[1:])))
        self.assertTrue(all(0 < x <= 1 for x in p))


class PredictedGainTests(unittest.TestCase):
    def setUp(self):
        self.params = PredictedChannelParams()

    def test_pure_los(self):
        self.assertAlmostEqual(
            predicted_gain(100, 100, self.params, p=1) / 2.512e-8, 1.0,
            delta=1e-3)

    def test_pure_nlos(self):
        g1 = predicted_gain(100, 100, self.params, p=1)
        g0 = predicted_gain(100, 100, self.params, p=0)
        self.assertAlmostEqual(g0 / g1, 0.1, delta=1e-12)

    def test_overhead(self):
        g = predicted_gain(100, 100, self.params)
        self.assertAlmostEqual(
            g / predicted_gain(100, 100, self.params, p=1), 1.0, delta=1e-12)

    def test_decreasing(self):
        ds = np.linspace(100, 5000, 2000)
        g = [predicted_gain(d, 100, self.params) for d in ds]
        self.assertTrue(all(a > b for a, b in zip(g, g[1:])))
        self.assertTrue(all(x > 0 for x in g))

    def test_bad_probability(self):
        self.assertRaises(
            DomainError, predicted_gain, 100, 100, self.params, p=1.5)
        self.assertRaises(DomainError, predicted_gain, 50, 100, self.params)

    def test_vectorized(self):
        d = np.array([100, 120, 300, 1000])
        gains = predicted_gains(d, 100, self.params)
        for x, g in zip(d, gains):
            self.assertAlmostEqual(
                g / predicted_gain(x, 100, self.params), 1.0, delta=1e-12)
        self.assertRaises(
            DomainError, predicted_gains, np.array([99, 200]), 100,
            self.params)

    def test_envelopes(self):
        rng = np.random.default_rng(7)
        for h in rng.uniform(10, 300, 10):
            d = h * rng.uniform(1, 20, 10000)
            g = predicted_gains(d, h, self.params)
            los = self.params.beta * d ** -self.params.alpha
            self.assertTrue((g <= los * (1 + 1e-12)).all())
            self.assertTrue((g >= self.params.eta * los * (1 - 1e-12)).all())


class FadingTests(unittest.TestCase):
    @slow
    def test_unit_mean(self):
        rng = np.random.default_rng(3)
        for k in (15.0, 0.0, -10.0):
            mean = draw_fading(k, rng, 1000000).mean()
            self.assertAlmostEqual(mean, 1.0, delta=0.01)

    def test_shapes(self):
        rng = np.random.default_rng(0)
        self.assertEqual(draw_fading(15, rng, (3, 4)).shape, (3, 4))
        self.assertEqual(draw_fading(None, rng, 5).tolist(), [1.0] * 5)
        self.assertEqual(draw_fading(None, rng), 1.0)
        self.assertIsInstance(float(draw_fading(15, rng)), float)
        self.assertEqual(draw_shadowing(2, rng, 7).shape, (7,))

    @slow
    def test_shadowing_median(self):
        rng = np.random.default_rng(4)
        x = draw_shadowing(5.0, rng, 1000000)
        self.assertTrue((x > 0).all())
        x_db = 10 * np.log10(x)
        self.assertAlmostEqual(np.median(x_db), 0.0, delta=0.05)
        self.assertAlmostEqual(np.std(x_db), 5.0, delta=0.05)


class LinkSamplerTests(unittest.TestCase):
    def test_reproducible(self):
        params = SegmentedChannelParams()
        a = LinkSampler(params, Streams(5), 10, 3)
        b = LinkSampler(params, Streams(5), 10, 3)
        for n in range(1, 11):
            for k in range(3):
                self.assertEqual(
                    a.gain(n, k, 150.0, Condition.LOS),
                    b.gain(n, k, 150.0, Condition.LOS))

    def test_independent_of_other_streams(self):
        params = SegmentedChannelParams()
        s1 = Streams(5)
        s2 = Streams(5)
        s2['policy'].random(1000)
        a = LinkSampler(params, s1, 4, 2)
        b = LinkSampler(params, s2, 4, 2)
        self.assertEqual(
            a.gain(3, 1, 120, Condition.NLOS),
            b.gain(3, 1, 120, Condition.NLOS))

    def test_seeds_differ(self):
        params = SegmentedChannelParams()
        a = LinkSampler(params, Streams(1), 4, 2)
        b = LinkSampler(params, Streams(2), 4, 2)
        self.assertNotEqual(
            a.gain(1, 0, 120, Condition.LOS).gain,
            b.gain(1, 0, 120, Condition.LOS).gain)

    def test_deterministic_params(self):
        cond = ConditionParams(-30, 2)
        params = SegmentedChannelParams(los=cond, nlos=cond)
        s = LinkSampler(params, Streams(0), 2, 1)
        self.assertEqual(
            s.gain(2, 0, 100, Condition.LOS).gain,
            realize_gain(100, Condition.LOS, params).gain)


def test_suite():
    return unittest.TestLoader().loadTestsFromName(__name__)


if __name__ == "__main__":
    unittest.main()
