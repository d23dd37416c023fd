import sys

from fuzzchip.cli import main

sys.exit(main())
