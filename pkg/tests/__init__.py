#!/usr/bin/env python

# uavnoma test suite
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

# Convert warnings into errors here, so that numeric overflows and the like
# fail the tests instead of polluting the output.
import warnings
warnings.simplefilter('error')  # noqa

import unittest

from . import test_acceptance
from . import test_baseline
from . import test_channel
from . import test_cli
from . import test_config
from . import test_environment
from . import test_errors
from . import test_harness
from . import test_noma
from . import test_oracle
from . import test_qlearn
from . import test_scenario
from . import test_streams
from . import test_warmstart
from . import test_world


def test_suite():
    suite = unittest.TestSuite()
    suite.addTest(test_acceptance.test_suite())
    suite.addTest(test_baseline.test_suite())
    suite.addTest(test_channel.test_suite())
    suite.addTest(test_cli.test_suite())
    suite.addTest(test_config.test_suite())
    suite.addTest(test_environment.test_suite())
    suite.addTest(test_errors.test_suite())
    suite.addTest(test_harness.test_suite())
    suite.addTest(test_noma.test_suite())
    suite.addTest(test_oracle.test_suite())
    suite.addTest(test_qlearn.test_suite())
    suite.addTest(test_scenario.test_suite())
    suite.addTest(test_streams.test_suite())
    suite.addTest(test_warmstart.test_suite())
    suite.addTest(test_world.test_suite())
    return suite


if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
