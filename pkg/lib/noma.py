"""Uplink NOMA rates with successive interference cancellation
"""

# uavnoma/noma.py - per-user SIC rates and sum-rate throughput
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

from uavnoma._record import Record
from uavnoma.errors import DomainError

_LN2 = math.log(2.0)


class UplinkSnapshot(Record):
    """The gains of the K users in one slot with the power budget.

    :param gains: the linear channel power gains, one per user
    :param power: the transmit power of every user (W)
    :param noise: the receiver noise power (W)
    """
    __slots__ = ('gains', 'power', 'noise')

    def __init__(self, gains, power, noise):
        gains = tuple(float(h) for h in gains)
        power = float(power)
        noise = float(noise)
        if not gains:
            raise DomainError("a snapshot needs at least one user")
        if not all(h > 0 for h in gains):
            raise DomainError(f"channel gains must be positive: {gains}")
        if not power > 0:
            raise DomainError(f"transmit power must be positive, got {power}")
        if not noise > 0:
            raise DomainError(f"noise power must be positive, got {noise}")
        self._set(gains=gains, power=power, noise=noise)

    @property
    def n_users(self):
        return len(self.gains)


class DecodingOrder(tuple):
    """A permutation of the user indexes 0..K-1.

    The user at position 0 is decoded last, free of interference; the user
    at position K-1 is decoded first, seeing all the others as noise.
    """
    __slots__ = ()

    def __new__(cls, order):
        order = tuple(int(k) for k in order)
        if sorted(order) != list(range(len(order))):
            raise DomainError(f"not a permutation of the users: {order}")
        return super().__new__(cls, order)

    @classmethod
    def identity(cls, n_users):
        return cls(range(n_users))


def per_user_rates(snapshot, order=None):
    """Return the achievable rate (bps/Hz) of every user under *order*.

    The result is indexed by user, not by decoding position. The default
    order decodes the users by decreasing index.
    """
    if order is None:
        order = DecodingOrder.identity(snapshot.n_users)
    elif not isinstance(order, DecodingOrder):
        order = DecodingOrder(order)
    if len(order) != snapshot.n_users:
        raise DomainError(
            f"decoding order for {len(order)} users,"
            f" snapshot with {snapshot.n_users}")

    p = snapshot.power
    rates = [0.0] * snapshot.n_users
    interference = snapshot.noise
    for k in order:
        signal = p * snapshot.gains[k]
        rates[k] = math.log1p(signal / interference) / _LN2
        interference += signal
    return rates


def snr_sum_rate(gains, power, noise):
    """Return ``log2(1 + power * sum(gains) / noise)`` without validation."""
    return math.log1p(power * math.fsum(gains) / noise) / _LN2


def sum_rate(snapshot):
    """Return the sum-rate throughput (bps/Hz) of *snapshot*.

    The value is the same for every decoding order.
    """
    return snr_sum_rate(snapshot.gains, snapshot.power, snapshot.noise)
