import sys

from irtune.main import main

sys.exit(main())
