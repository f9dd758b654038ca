"""Error classes for uavnoma
"""

# uavnoma/errors.py - exceptions raised by the package
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


class Error(Exception):
    """Base class for all the errors raised deliberately by uavnoma."""


class ConfigurationError(Error):
    """Invalid scenario, experiment configuration or input file.

    :param msg: the error description
    :param filename: the file the error was found in, if any
    :param lineno: the line number in *filename*, if known
    :param path: the JSON key path of the offending value, if known

    The attributes are also available after construction, so that callers
    can render their own diagnostic.
    """
    def __init__(self, msg, filename=None, lineno=None, path=None):
        self.msg = msg
        self.filename = filename
        self.lineno = lineno
        self.path = path
        super().__init__(self._format())

    def _format(self):
        prefix = []
        if self.filename is not None:
            if self.lineno is not None:
                prefix.append(f"{self.filename}:{self.lineno}")
            else:
                prefix.append(str(self.filename))
        if self.path:
            prefix.append(self.path)
        if prefix:
            return f"{': '.join(prefix)}: {self.msg}"
        return self.msg

    def with_context(self, filename=None, lineno=None):
        """Return a copy of the error located in *filename*."""
        return type(self)(
            self.msg,
            filename=filename if self.filename is None else self.filename,
            lineno=lineno if self.lineno is None else self.lineno,
            path=self.path)


class DomainError(Error, ValueError):
    """A numeric argument is out of the domain of a function."""


class InternalError(Error):
    """An internal invariant was violated."""
