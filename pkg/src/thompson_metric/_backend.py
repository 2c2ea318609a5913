"""Select the tree-pair kernel implementation.

The compiled extension is used when it imports; set ``THOMPSON_METRIC_PURE=1``
to force the pure-Python kernels.
"""

import os

from thompson_metric import _kernels_py

if os.environ.get("THOMPSON_METRIC_PURE"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from thompson_metric import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"

product = kernels.product
reduce = kernels.reduce
