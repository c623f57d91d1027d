"""Selection of the elimination kernel backend.

The compiled extension (``mc2reduce._speedups``, built from Cython) is used
when it imported cleanly at package import time; otherwise the pure-Python
implementation takes over with identical semantics.  Setting the environment
variable ``MC2REDUCE_PURE=1`` before import forces the pure-Python kernel,
which the benchmark and the backend-agreement tests rely on.
"""

from __future__ import annotations

import os

from . import _elim_py

if os.environ.get("MC2REDUCE_PURE") == "1":
    _impl = _elim_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _elim_py
        BACKEND = "python"

eliminate = _impl.eliminate


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name."""
    backends: dict[str, object] = {"python": _elim_py}
    try:
        from . import _speedups

        backends["cython"] = _speedups
    except ImportError:
        pass
    return backends
