"""Kernel selection: compiled extension if available, numpy fallback otherwise.

Set PNTKIT_FORCE_BACKEND=numpy (or cython) to pin a backend, e.g. for the
benchmark comparing both.
"""

import os

_forced = os.environ.get("PNTKIT_FORCE_BACKEND", "").strip().lower()

if _forced == "numpy":
    from pntkit._kernel._omega_np import omega_segment

    KERNEL_BACKEND = "numpy"
elif _forced == "cython":
    from pntkit._kernel._omega_cy import omega_segment  # type: ignore[no-redef]

    KERNEL_BACKEND = "cython"
else:
    try:
        from pntkit._kernel._omega_cy import omega_segment  # type: ignore[no-redef]

        KERNEL_BACKEND = "cython"
    except ImportError:
        from pntkit._kernel._omega_np import omega_segment  # type: ignore[no-redef]

        KERNEL_BACKEND = "numpy"

__all__ = ["omega_segment", "KERNEL_BACKEND"]
