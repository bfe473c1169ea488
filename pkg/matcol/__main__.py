"""Allow `python -m matcol`"""
import sys

from matcol.main import main

if __name__ == "__main__":
    sys.exit(main())
