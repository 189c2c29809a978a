import sys

from bitorbit.cli import main

sys.exit(main())
