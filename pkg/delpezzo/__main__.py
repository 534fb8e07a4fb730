import sys

from delpezzo.main import main

sys.exit(main())
