import sys

from catt.cli import main

sys.exit(main())
