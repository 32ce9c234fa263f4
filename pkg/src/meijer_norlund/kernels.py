"""Select the compiled inner loops when available, else the pure-Python ones.

Set ``MEIJER_NORLUND_PURE=1`` to force the fallback (the test-suite runs the
two side by side regardless).
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("MEIJER_NORLUND_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

lanczos_gamma = _impl.lanczos_gamma
hyp_series = _impl.hyp_series
norlund_table = _impl.norlund_table

__all__ = ["BACKEND", "lanczos_gamma", "hyp_series", "norlund_table"]
