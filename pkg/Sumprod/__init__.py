# This file marks the directory as a Python package.
# It is intentionally left empty but is required for module imports to work properly.
