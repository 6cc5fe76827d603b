import os
import sys

# Allow running the suite without an editable install.
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
