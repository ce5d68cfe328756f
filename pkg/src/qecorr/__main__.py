import sys

from qecorr.cli import main

if __name__ == "__main__":
    sys.exit(main())
