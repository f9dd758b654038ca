"""File output helpers
"""

# uavnoma/_io.py - atomic file writing and number formatting
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

import os
import csv
import json
import tempfile
from contextlib import contextmanager


@contextmanager
def atomic_open(filename, mode='w', **kwargs):
    """Open a temporary file that replaces *filename* on successful exit.

    The temporary file lives in the same directory as the target, which is
    created if missing. On error the temporary file is removed and the
    target is left untouched.
    """
    dirname = os.path.dirname(os.path.abspath(filename))
    os.makedirs(dirname, exist_ok=True)
    fd, tmpname = tempfile.mkstemp(
        dir=dirname, prefix='.' + os.path.basename(filename) + '.',
        suffix='.tmp')
    try:
        with os.fdopen(fd, mode, **kwargs) as f:
            yield f
        os.replace(tmpname, filename)
    except BaseException:
        try:
            os.unlink(tmpname)
        except OSError:
            pass
        raise


def fmt(x):
    """Format a number for the output files.

    Floats use the shortest representation that round-trips, integers and
    booleans are written as integers.
    """
    if isinstance(x, (bool, int)):
        return str(int(x))
    if hasattr(x, 'dtype') and x.dtype.kind in 'biu':
        return str(int(x))
    return repr(float(x))


def write_csv(filename, header, rows):
    """Write *rows* under *header* to *filename* atomically.

    Values are formatted with `fmt()` unless they are strings.
    """
    with atomic_open(filename, 'w', newline='', encoding='utf8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [v if isinstance(v, str) else fmt(v) for v in row])


def write_json(filename, data):
    with atomic_open(filename, 'w', encoding='utf8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write('\n')
