"""Backend selection for the relaxation kernel.

The compiled extension is preferred when it imported cleanly; setting
``MECHPAY_PURE_PYTHON=1`` in the environment forces the pure-Python twin.
Both expose the same ``bellman_ford`` and produce bit-identical results.
"""

from __future__ import annotations

import os

if os.environ.get("MECHPAY_PURE_PYTHON"):
    from . import _bf_py as _backend

    BACKEND = "python"
else:
    try:
        from . import _bf as _backend  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _bf_py as _backend

        BACKEND = "python"

bellman_ford = _backend.bellman_ford


def backend_name() -> str:
    """Name of the kernel in use: ``"compiled"`` or ``"python"``."""
    return BACKEND
