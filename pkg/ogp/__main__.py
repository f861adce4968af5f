import sys

from .config import Config
from .logger import setup_logging
from .cli.main import main

if __name__ == '__main__':
    setup_logging(Config().LOG)
    sys.exit(main())
