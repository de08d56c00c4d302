import sys
from pathlib import Path

# allow running pytest from a checkout without installing
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
