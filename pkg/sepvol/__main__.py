import sys

from sepvol.experiments import main

sys.exit(main())
