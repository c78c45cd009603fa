"""Select the counting-kernel implementation at import time.

The compiled extension is preferred; set ``WMWAUC_PURE_PYTHON=1`` to force
the NumPy fallback.
"""

from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import moments_from_counts

kernels = _pykernels
if os.environ.get("WMWAUC_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = kernels.BACKEND

__all__ = ["BACKEND", "kernels", "moments_from_counts"]
