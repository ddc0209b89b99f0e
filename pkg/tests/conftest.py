import os

os.environ.setdefault("ZID_PRECISION", "double")
