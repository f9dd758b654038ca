"""Access to JSON configuration documents with located errors
"""

# uavnoma/_config.py - JSON configuration reader
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

import json
import math
import numbers

from uavnoma.errors import ConfigurationError

MISSING = object()


def load_json(filename):
    """Parse the JSON file *filename* into a `Section`.

    Syntax errors are raised as `~uavnoma.errors.ConfigurationError` carrying
    the file name and the line number.
    """
    try:
        with open(filename, encoding='utf8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            e.msg, filename=str(filename), lineno=e.lineno) from None
    except OSError as e:
        raise ConfigurationError(
            e.strerror or str(e), filename=str(filename)) from None

    if not isinstance(data, dict):
        raise ConfigurationError(
            "the document must be a JSON object", filename=str(filename))
    return Section(data, filename=str(filename))


class Section:
    """A JSON object together with its position in the document.

    The accessors convert and check the values, raising
    `~uavnoma.errors.ConfigurationError` with the key path of the offending
    value.
    """
    __slots__ = ('_data', '_path', '_filename')

    def __init__(self, data, path='', filename=None):
        self._data = data
        self._path = path
        self._filename = filename

    def __repr__(self):
        return f"{self.__class__.__name__}({self._path or '<root>'})"

    def __contains__(self, key):
        return key in self._data

    @property
    def filename(self):
        return self._filename

    @property
    def path(self):
        return self._path

    @property
    def data(self):
        return self._data

    def keys(self):
        return self._data.keys()

    def child_path(self, key):
        if isinstance(key, int):
            return f"{self._path}[{key}]"
        return f"{self._path}.{key}" if self._path else key

    def error(self, msg, key=None):
        """Return a `ConfigurationError` located at *key* of this section."""
        path = self.child_path(key) if key is not None else self._path
        return ConfigurationError(msg, filename=self._filename, path=path)

    def check_keys(self, allowed):
        """Raise an error if the section has keys not in *allowed*."""
        unknown = sorted(set(self._data) - set(allowed))
        if unknown:
            raise self.error(f"unknown key: {unknown[0]!r}", unknown[0])

    def get(self, key, default=MISSING):
        try:
            return self._data[key]
        except KeyError:
            if default is MISSING:
                raise self.error("required key missing", key) from None
            return default

    def number(self, key, default=MISSING):
        value = self.get(key, default)
        if value is None and default is None:
            return None
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise self.error(f"expected a number, got {value!r}", key)
        value = float(value)
        if not math.isfinite(value):
            raise self.error(f"expected a finite number, got {value!r}", key)
        return value

    def integer(self, key, default=MISSING):
        value = self.get(key, default)
        if isinstance(value, bool) or not isinstance(value, numbers.Integral):
            raise self.error(f"expected an integer, got {value!r}", key)
        return int(value)

    def string(self, key, default=MISSING):
        value = self.get(key, default)
        if value is None and default is None:
            return None
        if not isinstance(value, str):
            raise self.error(f"expected a string, got {value!r}", key)
        return value

    def section(self, key, default=MISSING):
        value = self.get(key, default)
        if value is None:
            return None
        if not isinstance(value, dict):
            raise self.error(f"expected an object, got {value!r}", key)
        return Section(value, self.child_path(key), self._filename)

    def items(self, key, default=MISSING):
        """Return the list at *key* as a list of ``(path, value)``."""
        value = self.get(key, default)
        if not isinstance(value, list):
            raise self.error(f"expected a list, got {value!r}", key)
        path = self.child_path(key)
        return [(f"{path}[{i}]", v) for i, v in enumerate(value)]

    def sections(self, key, default=MISSING):
        """Return the list of objects at *key* as `Section` objects."""
        rv = []
        for path, value in self.items(key, default):
            if not isinstance(value, dict):
                raise ConfigurationError(
                    f"expected an object, got {value!r}",
                    filename=self._filename, path=path)
            rv.append(Section(value, path, self._filename))
        return rv

    def point(self, key, default=MISSING):
        """Return the pair of numbers at *key* as a tuple of floats."""
        value = self.get(key, default)
        return as_point(value, self._filename, self.child_path(key))


def as_point(value, filename, path):
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(
                isinstance(v, numbers.Real) and not isinstance(v, bool)
                for v in value)):
        raise ConfigurationError(
            f"expected a pair of numbers, got {value!r}",
            filename=filename, path=path)
    return (float(value[0]), float(value[1]))


def located(sec, build):
    """Call *build* and give its configuration errors the position of *sec*.

    Errors already carrying a file name or a key path are left alone.
    """
    try:
        return build()
    except ConfigurationError as e:
        if e.filename is not None or e.path is not None:
            raise
        raise ConfigurationError(
            e.msg, filename=sec.filename, path=sec.path or None) from None
