import sys

from .fracsinc_cli import main

sys.exit(main())
