"""Kernel lane selection.

The compiled extension (``_core``) is preferred; the numpy/pure lane
(``_pure``) is the fallback. Set MAGFRICTION_PURE=1 to force the fallback.
``IMPL`` names the active lane.
"""

import os

if os.environ.get("MAGFRICTION_PURE"):
    from magfriction._kernels import _pure as _impl

    IMPL = "pure"
else:
    try:
        from magfriction._kernels import _core as _impl

        IMPL = "compiled"
    except ImportError:
        from magfriction._kernels import _pure as _impl

        IMPL = "pure"

rk4_batch = _impl.rk4_batch
mode_sum = _impl.mode_sum
halfspace_chunk = _impl.halfspace_chunk

__all__ = ["IMPL", "rk4_batch", "mode_sum", "halfspace_chunk"]
