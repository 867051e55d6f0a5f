import sys

from moto.cli import main

sys.exit(main())
