"""Kernel backend selection.

The trajectory and value-iteration inner loops dominate runtime, so they are
compiled with numba by default.  Set AGEJAM_BACKEND=numpy to force the pure
reference kernels (the two backends are bit-identical given the same seed);
the numpy path is also used automatically when numba cannot be imported.
"""

from __future__ import annotations

import os


def _select():
    choice = os.environ.get("AGEJAM_BACKEND", "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"AGEJAM_BACKEND must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy":
        from . import _kernels_numpy as kernels
        return kernels, "numpy"
    try:
        from . import _kernels_numba as kernels
        return kernels, "numba"
    except ImportError:
        if choice == "numba":
            raise
        from . import _kernels_numpy as kernels
        return kernels, "numpy"


kernels, BACKEND = _select()


def backend_name() -> str:
    return BACKEND
