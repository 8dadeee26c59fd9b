import sys

from shirshov.cli import main

sys.exit(main())
