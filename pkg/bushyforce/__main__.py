"""Allow running bushyforce as ``python -m bushyforce``."""
from bushyforce.cli import main
import sys

sys.exit(main())
