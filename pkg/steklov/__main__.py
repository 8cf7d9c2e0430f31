import sys

from steklov.main import main

sys.exit(main())
