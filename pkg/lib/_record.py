"""Base class for the small immutable parameter objects
"""

# uavnoma/_record.py - immutable value objects
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


class Record:
    """An immutable object whose state is the value of its `!__slots__`.

    Subclasses list their fields in `!__slots__`, accept them as keyword
    arguments of the same name and store them calling `_set()` once they
    are validated.
    """
    __slots__ = ()

    def _set(self, **values):
        for name, value in values.items():
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError(
            f"{self.__class__.__name__} objects are read-only")

    def __delattr__(self, name):
        raise AttributeError(
            f"{self.__class__.__name__} objects are read-only")

    def __repr__(self):
        args = ', '.join(
            f"{name}={getattr(self, name)!r}" for name in self.__slots__)
        return f"{self.__class__.__name__}({args})"

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.astuple() == other.astuple()

    def __ne__(self, other):
        rv = self.__eq__(other)
        return rv if rv is NotImplemented else not rv

    def __hash__(self):
        return hash(self.astuple())

    def __getstate__(self):
        return self.as_dict()

    def __setstate__(self, state):
        self._set(**state)

    def astuple(self):
        return tuple(getattr(self, name) for name in self.__slots__)

    def as_dict(self):
        """Return the fields as a new `!dict`."""
        return {name: getattr(self, name) for name in self.__slots__}

    def replace(self, **changes):
        """Return a copy of the object with some fields changed.

        The new values go through the same validation of the constructor.
        """
        values = self.as_dict()
        unknown = set(changes) - set(values)
        if unknown:
            raise TypeError(
                f"unknown {self.__class__.__name__} fields:"
                f" {', '.join(sorted(unknown))}")
        values.update(changes)
        return type(self)(**values)
