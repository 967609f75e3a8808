import sys

from hopfmi.cli import main

sys.exit(main())
