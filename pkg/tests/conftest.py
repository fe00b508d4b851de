import sys
from pathlib import Path

# Make tests/helpers.py and tests/acceptance_helpers.py importable.
sys.path.insert(0, str(Path(__file__).parent))
