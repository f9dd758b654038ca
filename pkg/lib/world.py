"""Discrete geometry of the simulated area

This module owns the grid the UAV moves on, the obstacles on the ground, the
mobile users' tracks and the line-of-sight test between the UAV and a user.

All the objects are immutable and all the functions are pure: they can be
shared by concurrent experiment runs.
"""

# uavnoma/world.py - grid, obstacles, users and UAV kinematics
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
from bisect import bisect_right
from collections import namedtuple

import numpy as np

from uavnoma.errors import ConfigurationError, DomainError, InternalError

# Geometric tolerance (m): boxes are shrunk by this amount before testing
LOS_TOLERANCE = 1e-9


class GridSpec:
    """The square area split in square cells.

    :param half_extent: half the side of the area (m); the area is
        ``[-half_extent, half_extent]`` on both axes
    :param cell_size: the side of a cell (m), which is also the UAV
        displacement in one slot

    Cells are addressed by integer pairs ``(i, j)``, *i* along the x axis
    and *j* along the y axis, ``(0, 0)`` being the south-west corner.
    """
    __slots__ = ('_half_extent', '_cell_size', '_cells_per_side')

    def __init__(self, half_extent, cell_size):
        half_extent = float(half_extent)
        cell_size = float(cell_size)
        if not cell_size > 0:
            raise ConfigurationError(
                f"cell size must be positive, got {cell_size}")
        if not half_extent > 0:
            raise ConfigurationError(
                f"half extent must be positive, got {half_extent}")

        ratio = 2 * half_extent / cell_size
        n = int(round(ratio))
        if abs(ratio - n) > 1e-9 * max(1.0, ratio):
            raise ConfigurationError(
                f"the area side {2 * half_extent} is not a multiple of the"
                f" cell size {cell_size}")
        if n < 2:
            raise ConfigurationError(
                f"the grid needs at least 2 cells per side, got {n}")

        self._half_extent = half_extent
        self._cell_size = cell_size
        self._cells_per_side = n

    def __repr__(self):
        return "{}(half_extent={!r}, cell_size={!r})".format(
            self.__class__.__name__, self._half_extent, self._cell_size)

    def __eq__(self, other):
        if not isinstance(other, GridSpec):
            return NotImplemented
        return (self._half_extent == other._half_extent
            and self._cell_size == other._cell_size)

    def __ne__(self, other):
        rv = self.__eq__(other)
        return rv if rv is NotImplemented else not rv

    def __hash__(self):
        return hash((self._half_extent, self._cell_size))

    @property
    def half_extent(self):
        """Half the side of the area (m)."""
        return self._half_extent

    @property
    def cell_size(self):
        """The cell side, also the UAV displacement per slot (m)."""
        return self._cell_size

    @property
    def cells_per_side(self):
        """The number of cells along each axis."""
        return self._cells_per_side

    @property
    def n_cells(self):
        """The total number of cells."""
        return self._cells_per_side * self._cells_per_side

    def contains(self, cell):
        """Return `!True` if *cell* is a valid cell of the grid."""
        i, j = cell
        n = self._cells_per_side
        return 0 <= i < n and 0 <= j < n

    def index(self, cell):
        """Return the row-major flat index of *cell*."""
        if not self.contains(cell):
            raise InternalError(f"cell {tuple(cell)} outside {self!r}")
        return cell[0] * self._cells_per_side + cell[1]

    def cell_at(self, index):
        """Return the cell with flat index *index*."""
        if not 0 <= index < self.n_cells:
            raise InternalError(f"cell index {index} outside {self!r}")
        return divmod(int(index), self._cells_per_side)

    def cells(self):
        """Iterate on all the cells in flat index order."""
        n = self._cells_per_side
        for i in range(n):
            for j in range(n):
                yield (i, j)

    def centers(self):
        """Return the cell centers as an array of shape (n_cells, 2)."""
        n = self._cells_per_side
        axis = -self._half_extent + (np.arange(n) + 0.5) * self._cell_size
        xs, ys = np.meshgrid(axis, axis, indexing='ij')
        return np.column_stack([xs.ravel(), ys.ravel()])

    def in_area(self, point, tol=1e-9):
        """Return `!True` if the horizontal *point* lies in the area."""
        h = self._half_extent + tol
        return -h <= point[0] <= h and -h <= point[1] <= h


class Obstacle:
    """An axis-aligned box standing on the ground.

    :param x_min, x_max, y_min, y_max: the box footprint (m)
    :param height: the box height (m)
    """
    __slots__ = ('_x_min', '_x_max', '_y_min', '_y_max', '_height')

    def __init__(self, x_min, x_max, y_min, y_max, height):
        x_min, x_max = float(x_min), float(x_max)
        y_min, y_max = float(y_min), float(y_max)
        height = float(height)
        if not x_min < x_max:
            raise ConfigurationError(
                f"obstacle x range empty: {x_min} >= {x_max}")
        if not y_min < y_max:
            raise ConfigurationError(
                f"obstacle y range empty: {y_min} >= {y_max}")
        if not height > 0:
            raise ConfigurationError(
                f"obstacle height must be positive, got {height}")

        self._x_min = x_min
        self._x_max = x_max
        self._y_min = y_min
        self._y_max = y_max
        self._height = height

    def __repr__(self):
        return "{}({!r}, {!r}, {!r}, {!r}, {!r})".format(
            self.__class__.__name__, self._x_min, self._x_max,
            self._y_min, self._y_max, self._height)

    def __eq__(self, other):
        if not isinstance(other, Obstacle):
            return NotImplemented
        return self.bounds == other.bounds

    def __hash__(self):
        return hash(self.bounds)

    @property
    def x_min(self):
        return self._x_min

    @property
    def x_max(self):
        return self._x_max

    @property
    def y_min(self):
        return self._y_min

    @property
    def y_max(self):
        return self._y_max

    @property
    def height(self):
        return self._height

    @property
    def bounds(self):
        """The tuple ``(x_min, x_max, y_min, y_max, height)``."""
        return (self._x_min, self._x_max, self._y_min, self._y_max,
            self._height)


class UserTrack:
    """The piecewise-linear track of a ground user.

    :param waypoints: a sequence of ``(slot, (x, y))`` pairs with strictly
        increasing slot numbers (slots are counted from 1)
    :param name: an optional label for the user

    The position between two waypoints is interpolated linearly; before the
    first and after the last waypoint the user stands still.
    """
    __slots__ = ('_slots', '_xs', '_ys', '_name')

    def __init__(self, waypoints, name=None):
        waypoints = list(waypoints)
        if not waypoints:
            raise ConfigurationError("a user track needs at least one waypoint")

        slots = []
        xs = []
        ys = []
        for slot, (x, y) in waypoints:
            if slot != int(slot) or slot < 1:
                raise ConfigurationError(
                    f"waypoint slots must be integers >= 1, got {slot!r}")
            if slots and slot <= slots[-1]:
                raise ConfigurationError(
                    f"waypoint slots must be strictly increasing:"
                    f" {slot} after {slots[-1]}")
            slots.append(int(slot))
            xs.append(float(x))
            ys.append(float(y))

        self._slots = tuple(slots)
        self._xs = tuple(xs)
        self._ys = tuple(ys)
        self._name = name

    def __repr__(self):
        return "{}({!r}, name={!r})".format(
            self.__class__.__name__, self.waypoints, self._name)

    def __eq__(self, other):
        if not isinstance(other, UserTrack):
            return NotImplemented
        return self.waypoints == other.waypoints

    def __hash__(self):
        return hash(self.waypoints)

    @property
    def name(self):
        return self._name

    @property
    def waypoints(self):
        """The waypoints as a tuple of ``(slot, (x, y))``."""
        return tuple(
            (s, (x, y)) for s, x, y in zip(self._slots, self._xs, self._ys))

    def position(self, n):
        """Return the horizontal position ``(x, y)`` at slot *n*."""
        if n < 1:
            raise DomainError(f"slots are counted from 1, got {n}")
        slots = self._slots
        if n <= slots[0]:
            return (self._xs[0], self._ys[0])
        if n >= slots[-1]:
            return (self._xs[-1], self._ys[-1])

        k = bisect_right(slots, n)
        s0, s1 = slots[k - 1], slots[k]
        if n == s0:
            return (self._xs[k - 1], self._ys[k - 1])
        f = (n - s0) / (s1 - s0)
        return (
            self._xs[k - 1] + f * (self._xs[k] - self._xs[k - 1]),
            self._ys[k - 1] + f * (self._ys[k] - self._ys[k - 1]))

    def positions(self, n_slots):
        """Return the positions at slots 1..*n_slots*, shape (n_slots, 2)."""
        n = np.arange(1, n_slots + 1, dtype=float)
        return np.column_stack([
            np.interp(n, self._slots, self._xs),
            np.interp(n, self._slots, self._ys)])

    def max_step(self):
        """Return the largest displacement of the user in one slot (m)."""
        rv = 0.0
        for k in range(1, len(self._slots)):
            dist = math.hypot(
                self._xs[k] - self._xs[k - 1], self._ys[k] - self._ys[k - 1])
            rv = max(rv, dist / (self._slots[k] - self._slots[k - 1]))
        return rv


def user_position(track, n):
    """Return the horizontal position of the user on *track* at slot *n*."""
    return track.position(n)


UavState = namedtuple('UavState', 'cell altitude')
UavState.__doc__ = """The UAV grid cell and its (fixed) altitude in meters."""


class Action(enum.IntEnum):
    """The UAV maneuvers in one slot, in tie-breaking order."""
    HOVER = 0
    LEFT = 1
    RIGHT = 2
    FORWARD = 3
    BACKWARD = 4

    @property
    def delta(self):
        """The ``(di, dj)`` cell displacement of the action."""
        return _DELTAS[self]

    @property
    def label(self):
        """The action name as written in the output files."""
        return self.name.lower()

    def displacement(self, cell_size):
        """The displacement of the action in meters."""
        di, dj = _DELTAS[self]
        return (di * cell_size, dj * cell_size)


_DELTAS = {
    Action.HOVER: (0, 0),
    Action.LEFT: (-1, 0),
    Action.RIGHT: (1, 0),
    Action.FORWARD: (0, 1),
    Action.BACKWARD: (0, -1),
}

N_ACTIONS = len(Action)


def next_cell(cell, action, grid):
    """Return the cell reached from *cell* with *action*, and a flag.

    The flag is `!True` if the move would leave the grid: in this case the
    UAV stays in *cell*.
    """
    di, dj = _DELTAS[action]
    target = (cell[0] + di, cell[1] + dj)
    if grid.contains(target):
        return target, False
    return tuple(cell), True


def apply_action(state, action, grid):
    """Move the UAV in *state* by *action*.

    Return a new `UavState` and a flag set if the action was blocked by the
    grid boundary. The caller is responsible for any penalty.
    """
    if not grid.contains(state.cell):
        raise InternalError(f"UAV cell {tuple(state.cell)} outside {grid!r}")
    cell, violated = next_cell(state.cell, action, grid)
    return state._replace(cell=cell), violated


def cell_to_coords(cell, grid):
    """Return the horizontal coordinates (m) of the center of *cell*."""
    if not grid.contains(cell):
        raise InternalError(f"cell {tuple(cell)} outside {grid!r}")
    h = grid.half_extent
    size = grid.cell_size
    return (-h + (cell[0] + 0.5) * size, -h + (cell[1] + 0.5) * size)


def coords_to_cell(point, grid):
    """Return the cell containing the horizontal *point*.

    Points on the outer boundary of the area belong to the border cells.
    """
    if not grid.in_area(point):
        raise InternalError(f"point {tuple(point)} outside {grid!r}")
    n = grid.cells_per_side
    h = grid.half_extent
    i = min(max(int(math.floor((point[0] + h) / grid.cell_size)), 0), n - 1)
    j = min(max(int(math.floor((point[1] + h) / grid.cell_size)), 0), n - 1)
    return (i, j)


def distance_3d(uav_xy, user_xy, altitude):
    """Return the distance between the UAV at *altitude* and a ground user."""
    dx = uav_xy[0] - user_xy[0]
    dy = uav_xy[1] - user_xy[1]
    return math.sqrt(dx * dx + dy * dy + altitude * altitude)


def is_los(uav, user, obstacles):
    """Return `!True` if no obstacle stands between *uav* and *user*.

    :param uav: the UAV position ``(x, y, z)``
    :param user: the user position ``(x, y, 0)``
    :param obstacles: a sequence of `Obstacle`

    The segment is tested against each box with the slab method. A box
    blocks the link only if the segment crosses its interior: boxes are
    shrunk by `LOS_TOLERANCE`, so grazing a face or an edge leaves the link
    in line of sight.
    """
    ox, oy, oz = uav
    dx = user[0] - ox
    dy = user[1] - oy
    dz = user[2] - oz
    tol = LOS_TOLERANCE
    for box in obstacles:
        if _segment_crosses(
                (ox, oy, oz), (dx, dy, dz),
                (box.x_min + tol, box.y_min + tol, -math.inf),
                (box.x_max - tol, box.y_max - tol, box.height - tol)):
            return False
    return True


def _segment_crosses(origin, direction, lo, hi):
    t0 = 0.0
    t1 = 1.0
    for o, d, a, b in zip(origin, direction, lo, hi):
        if d == 0.0:
            if o <= a or o >= b:
                return False
            continue
        ta = (a - o) / d
        tb = (b - o) / d
        if ta > tb:
            ta, tb = tb, ta
        if ta > t0:
            t0 = ta
        if tb < t1:
            t1 = tb
        if t0 >= t1:
            return False
    return True
