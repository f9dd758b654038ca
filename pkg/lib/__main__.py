import sys

from uavnoma.cli import main

if __name__ == '__main__':
    sys.exit(main())
