import sys
from pathlib import Path

# let test modules import the shared oracles in helpers.py
sys.path.insert(0, str(Path(__file__).parent))
