import sys

from ifsel.cli import main

sys.exit(main())
