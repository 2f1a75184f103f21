import os
import sys

# Modules import each other as top-level packages (engine, identity, utils, components).
SRC = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

os.environ.setdefault("THETA_VERBOSE", "0")
