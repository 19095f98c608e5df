'''
This file serves as entry-point for installer scripts
'''

# native imports
import sys

# local imports
from hybridfg.main import main


if __name__ == '__main__':
  sys.exit(main())
