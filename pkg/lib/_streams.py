"""Named random streams derived from a single master seed
"""

# uavnoma/_streams.py - reproducible random streams
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

import zlib

import numpy as np

from uavnoma.errors import DomainError


class Streams:
    """A family of independent random generators keyed by name.

    Every stream is a `!numpy.random.Generator` on a PCG64 bit generator
    seeded by ``SeedSequence(seed, spawn_key=(crc32(name),))``: the values
    produced by a stream depend only on the master seed and on the stream
    name, so that adding a stream never perturbs the others.

    Asking twice for the same name returns the same generator object.
    """
    __slots__ = ('_seed', '_streams')

    def __init__(self, seed):
        seed = int(seed)
        if seed < 0:
            raise DomainError(f"seed must be nonnegative, got {seed}")
        self._seed = seed
        self._streams = {}

    def __repr__(self):
        return f"{self.__class__.__name__}({self._seed})"

    @property
    def seed(self):
        """The master seed."""
        return self._seed

    def get(self, name):
        """Return the generator of the stream *name*."""
        try:
            return self._streams[name]
        except KeyError:
            pass

        key = zlib.crc32(name.encode('utf8'))
        seq = np.random.SeedSequence(self._seed, spawn_key=(key,))
        rv = self._streams[name] = np.random.Generator(np.random.PCG64(seq))
        return rv

    __getitem__ = get


def as_streams(rng):
    """Return a `Streams` from a seed or return *rng* if already one."""
    if isinstance(rng, Streams):
        return rng
    return Streams(rng)
