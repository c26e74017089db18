import sys

from muxbench.cli import main

sys.exit(main())
