import sys

from medagg.cli import main

sys.exit(main())
