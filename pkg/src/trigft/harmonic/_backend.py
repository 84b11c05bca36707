"""Pick the weight-grid kernel: compiled if importable, else numpy.

Setting TRIGFT_PURE_PYTHON=1 forces the numpy kernel.
"""

import os

from . import _kernel_py

KERNELS = {"python": _kernel_py.weight_grid}

try:
    from ._cone_ext import weight_grid as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    KERNELS["compiled"] = _compiled

if _compiled is not None and not os.environ.get("TRIGFT_PURE_PYTHON"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

weight_grid = KERNELS[BACKEND]
