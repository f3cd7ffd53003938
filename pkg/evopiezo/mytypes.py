"""Module for defining types used in evopiezo package."""

import numpy as np

boolnp = np.bool_
intnp = np.int64
doublenp = np.float64
# byte layout of snapshot payloads
snapshotnp = np.dtype('<f8')
