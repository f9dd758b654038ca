"""Air-to-ground channel models

The *segmented* model realizes the channel power gain of a link given its
line-of-sight condition::

    h = mu * xi * beta * d ** -alpha

where the reference gain *beta* and the exponent *alpha* depend on the
condition, *xi* is log-normal shadowing and *mu* the unit-mean power of a
Rician fading coefficient.

The *predicted* model is the average gain used for planning, weighting the
LoS and NLoS path loss by an elevation-dependent LoS probability::

    h = [p + eta * (1 - p)] * beta * d ** -alpha
    p = 1 / (1 + C * exp(-D * (theta - C)))

with the elevation angle *theta* in degrees.
"""

# uavnoma/channel.py - segmented and predicted channel gains
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

import enum
import math
from collections import namedtuple

import numpy as np

from uavnoma._record import Record
from uavnoma.errors import ConfigurationError, DomainError

# Relative slack accepted on d >= H, distances being computed in floating point
_ALTITUDE_RTOL = 1e-12


def db_to_linear(x_db):
    """Convert a power ratio from dB to linear scale."""
    return 10.0 ** (x_db / 10.0)


def dbm_to_watt(p_dbm):
    """Convert a power from dBm to W."""
    return db_to_linear(p_dbm) / 1000.0


class Condition(enum.Enum):
    """The propagation condition of a link."""
    LOS = 'los'
    NLOS = 'nlos'

    @classmethod
    def from_flag(cls, los):
        return cls.LOS if los else cls.NLOS


class ConditionParams(Record):
    """The channel parameters of one propagation condition.

    :param beta_db: the reference gain at 1 m (dB)
    :param alpha: the path-loss exponent
    :param sigma_db: the standard deviation of the shadowing (dB)
    :param k_factor_db: the Rician K-factor (dB); `!None` disables the
        small-scale fading
    """
    __slots__ = ('beta_db', 'alpha', 'sigma_db', 'k_factor_db')

    def __init__(self, beta_db, alpha, sigma_db=0.0, k_factor_db=None):
        beta_db = float(beta_db)
        alpha = float(alpha)
        sigma_db = float(sigma_db)
        if not math.isfinite(beta_db):
            raise ConfigurationError(f"invalid reference gain: {beta_db} dB")
        if not alpha > 0:
            raise ConfigurationError(
                f"path-loss exponent must be positive, got {alpha}")
        if not sigma_db >= 0:
            raise ConfigurationError(
                f"shadowing deviation must be nonnegative, got {sigma_db}")
        if k_factor_db is not None:
            k_factor_db = float(k_factor_db)
            if not math.isfinite(k_factor_db):
                raise ConfigurationError(
                    f"invalid Rician K-factor: {k_factor_db} dB")
        self._set(
            beta_db=beta_db, alpha=alpha, sigma_db=sigma_db,
            k_factor_db=k_factor_db)

    @property
    def beta(self):
        """The reference gain as a linear ratio."""
        return db_to_linear(self.beta_db)

    @property
    def deterministic(self):
        """`!True` if the condition has neither shadowing nor fading."""
        return self.sigma_db == 0.0 and self.k_factor_db is None


class SegmentedChannelParams(Record):
    """The pair of LoS and NLoS `ConditionParams`.

    The defaults are the usual urban values: -30 dB, exponent 2, 2 dB
    shadowing and 15 dB K-factor in LoS; -40 dB, exponent 4, 5 dB shadowing
    and Rayleigh fading in NLoS.
    """
    __slots__ = ('los', 'nlos')

    def __init__(self, los=None, nlos=None):
        if los is None:
            los = ConditionParams(-30.0, 2.0, 2.0, 15.0)
        if nlos is None:
            nlos = ConditionParams(-40.0, 4.0, 5.0, 0.0)
        self._set(los=los, nlos=nlos)

    def __getitem__(self, condition):
        return self.los if condition is Condition.LOS else self.nlos

    @property
    def deterministic(self):
        return self.los.deterministic and self.nlos.deterministic


class PredictedChannelParams(Record):
    """The parameters of the average channel used for prediction.

    :param alpha: the path-loss exponent
    :param beta_db: the reference gain (dB)
    :param eta: the additional NLoS attenuation, in (0, 1)
    :param los_c, los_d: the shape of the LoS probability curve
    """
    __slots__ = ('alpha', 'beta_db', 'eta', 'los_c', 'los_d')

    def __init__(self, alpha=2.3, beta_db=-30.0, eta=0.1, los_c=10.0,
            los_d=0.6):
        alpha = float(alpha)
        beta_db = float(beta_db)
        eta = float(eta)
        los_c = float(los_c)
        los_d = float(los_d)
        if not alpha > 0:
            raise ConfigurationError(
                f"path-loss exponent must be positive, got {alpha}")
        if not math.isfinite(beta_db):
            raise ConfigurationError(f"invalid reference gain: {beta_db} dB")
        if not 0 < eta < 1:
            raise ConfigurationError(f"eta must be in (0, 1), got {eta}")
        if not los_c > 0:
            raise ConfigurationError(f"C must be positive, got {los_c}")
        if not los_d > 0:
            raise ConfigurationError(f"D must be positive, got {los_d}")
        self._set(
            alpha=alpha, beta_db=beta_db, eta=eta, los_c=los_c, los_d=los_d)

    @property
    def beta(self):
        return db_to_linear(self.beta_db)


class LinkGain(namedtuple('LinkGain', 'gain condition distance')):
    """A realized channel power gain with its condition and link distance."""
    __slots__ = ()

    @property
    def los(self):
        return self.condition is Condition.LOS


def _check_distance(d, altitude):
    if not altitude > 0:
        raise DomainError(f"altitude must be positive, got {altitude}")
    if d < altitude * (1.0 - _ALTITUDE_RTOL):
        raise DomainError(
            f"distance {d} m shorter than the altitude {altitude} m")


def elevation_angle(d, altitude):
    """Return the elevation angle (degrees) of a UAV at *altitude* seen from
    a ground user at distance *d*.
    """
    _check_distance(d, altitude)
    return math.degrees(math.asin(min(1.0, altitude / d)))


def p_los(d, altitude, los_c, los_d):
    """Return the probability of line of sight of a link.

    :param d: the 3D link distance (m)
    :param altitude: the UAV altitude (m), not above *d*
    :param los_c, los_d: the shape parameters of the curve

    The elevation angle enters the formula in degrees.
    """
    theta = elevation_angle(d, altitude)
    return 1.0 / (1.0 + los_c * math.exp(-los_d * (theta - los_c)))


def predicted_gain(d, altitude, params, p=None):
    """Return the average channel gain predicted at distance *d*.

    :param params: a `PredictedChannelParams`
    :param p: if not `!None` use this LoS probability instead of the one
        given by `p_los()`; ``p=1`` gives the pure LoS model
    """
    if p is None:
        p = p_los(d, altitude, params.los_c, params.los_d)
    else:
        _check_distance(d, altitude)
        if not 0 <= p <= 1:
            raise DomainError(f"LoS probability must be in [0, 1], got {p}")
    return (p + params.eta * (1.0 - p)) * params.beta * d ** -params.alpha


def predicted_gains(d, altitude, params, p=None):
    """Vectorized `predicted_gain()` over an array of distances *d*."""
    d = np.asarray(d, dtype=float)
    if not altitude > 0:
        raise DomainError(f"altitude must be positive, got {altitude}")
    if d.size and d.min() < altitude * (1.0 - _ALTITUDE_RTOL):
        raise DomainError(
            f"distance {d.min()} m shorter than the altitude {altitude} m")
    if p is None:
        theta = np.degrees(np.arcsin(np.minimum(1.0, altitude / d)))
        p = 1.0 / (1.0 + params.los_c * np.exp(
            -params.los_d * (theta - params.los_c)))
    return (p + params.eta * (1.0 - p)) * params.beta * d ** -params.alpha


def draw_shadowing(sigma_db, rng, size=None):
    """Draw log-normal shadowing factors with *sigma_db* deviation in dB."""
    return 10.0 ** (sigma_db * rng.standard_normal(size) / 10.0)


def draw_fading(k_factor_db, rng, size=None):
    """Draw unit-mean Rician power factors with K-factor *k_factor_db*.

    `!None` as K-factor returns ones.
    """
    if size is None:
        shape = ()
    elif isinstance(size, int):
        shape = (size,)
    else:
        shape = tuple(size)
    if k_factor_db is None:
        return np.ones(shape) if shape else 1.0
    z = rng.standard_normal((2,) + shape)
    return _rician_power(k_factor_db, z[0], z[1])


def _rician_power(k_factor_db, x, y):
    k = db_to_linear(k_factor_db)
    los = math.sqrt(k / (k + 1.0))
    scatter = math.sqrt(1.0 / (2.0 * (k + 1.0)))
    return (los + scatter * x) ** 2 + (scatter * y) ** 2


def _gain(d, cond, z_shadow, z_x, z_y):
    h = cond.beta * d ** -cond.alpha
    if cond.sigma_db:
        h *= 10.0 ** (cond.sigma_db * z_shadow / 10.0)
    if cond.k_factor_db is not None:
        h *= _rician_power(cond.k_factor_db, z_x, z_y)
    return h


def realize_gain(d, condition, params, rng=None):
    """Realize the channel power gain of a link.

    :param d: the 3D link distance (m)
    :param condition: the link `Condition`
    :param params: a `SegmentedChannelParams`
    :param rng: a `!numpy.random.Generator`; if `!None` the shadowing and
        fading factors are both 1 and only the path loss is returned
    :rtype: `LinkGain`
    """
    if not d > 0:
        raise DomainError(f"link distance must be positive, got {d}")
    cond = params[condition]
    if rng is None:
        return LinkGain(cond.beta * d ** -cond.alpha, condition, d)
    z = rng.standard_normal(3)
    return LinkGain(
        _gain(d, cond, float(z[0]), float(z[1]), float(z[2])), condition, d)


class LinkSampler:
    """The channel randomness of a whole run, drawn in advance.

    :param streams: the run's `~uavnoma._streams.Streams`
    :param n_slots: the number of slots of the run
    :param n_users: the number of users

    The standard normals for shadowing and fading of every (slot, user) are
    drawn from the ``shadowing`` and ``fading`` streams at construction, so
    the gains realized at a slot do not depend on how many random numbers
    the controller consumed before.
    """
    __slots__ = ('_params', '_shadow', '_fade_x', '_fade_y')

    def __init__(self, params, streams, n_slots, n_users):
        self._params = params
        shadow = streams['shadowing'].standard_normal((n_slots, n_users))
        fade = streams['fading'].standard_normal((n_slots, n_users, 2))
        self._shadow = shadow.tolist()
        self._fade_x = fade[..., 0].tolist()
        self._fade_y = fade[..., 1].tolist()

    @property
    def params(self):
        return self._params

    def gain(self, n, k, d, condition):
        """Return the `LinkGain` of user *k* at slot *n* (from 1)."""
        if not d > 0:
            raise DomainError(f"link distance must be positive, got {d}")
        i = n - 1
        h = _gain(d, self._params[condition], self._shadow[i][k],
            self._fade_x[i][k], self._fade_y[i][k])
        return LinkGain(h, condition, d)
