# This file is part of the dyadnet package
# and is released under Creative Common Attribution 4.0 International (CC BY 4.0)
# see README.txt or LICENSE.txt for details

import sys
from dyadnet.cli import main

#
# MAIN ENTRY POINT
#
if __name__ == "__main__":
    sys.exit(main())
