import sys

from bispace.cli import main

sys.exit(main())
