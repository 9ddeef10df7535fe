import sys

from qeuler.cli import main

sys.exit(main())
