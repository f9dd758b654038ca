# setup.py - setuptools packaging
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

"""UAV trajectory learning for uplink NOMA

uavnoma simulates a UAV serving mobile ground users over an urban grid with
uplink power-domain NOMA, and learns the UAV trajectory with tabular
Q-learning, optionally warm-started from a surrogate radio model.
"""

import re

from setuptools import setup

# Take a look at https://www.python.org/dev/peps/pep-0440/
# for a consistent versioning pattern.

with open("lib/__init__.py") as f:
    UAVNOMA_VERSION = re.search(
        r"^__version__ = '([^']+)'", f.read(), re.MULTILINE).group(1)


classifiers = """\
Development Status :: 3 - Alpha
Intended Audience :: Science/Research
License :: OSI Approved :: GNU Lesser General Public License v3 or later (LGPLv3+)
Programming Language :: Python
Programming Language :: Python :: 3
Programming Language :: Python :: 3.8
Programming Language :: Python :: 3.9
Programming Language :: Python :: 3.10
Programming Language :: Python :: 3.11
Programming Language :: Python :: 3 :: Only
Topic :: Scientific/Engineering
Topic :: Communications
Operating System :: OS Independent
"""

try:
    f = open("README.rst")
    readme = f.read()
    f.close()
except Exception:
    print("failed to read readme: ignoring...")
    readme = __doc__

setup(name="uavnoma",
      version=UAVNOMA_VERSION,
      author="The uavnoma Team",
      license="LGPL",
      platforms=["any"],
      python_requires='>=3.8',
      description=readme.split("\n")[0],
      long_description="\n".join(readme.split("\n")[2:]).lstrip(),
      classifiers=[x for x in classifiers.split("\n") if x],
      package_dir={'uavnoma': 'lib'},
      packages=['uavnoma'],
      package_data={'uavnoma': ['data/*.json']},
      install_requires=['numpy>=1.17'],
      entry_points={
          'console_scripts': ['uavnoma = uavnoma.cli:main'],
      })
