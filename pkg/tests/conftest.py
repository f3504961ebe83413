import os
import sys

# Let every test module do `import helpers` regardless of how pytest was
# invoked or which import mode is active.
sys.path.insert(0, os.path.dirname(__file__))
