"""Select the path-kernel backend at import.

The compiled extension is preferred; ``CONE_EXIT_PURE_PYTHON=1`` forces the
numpy fallback.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled

if os.environ.get("CONE_EXIT_PURE_PYTHON") == "1" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"


def available() -> list[str]:
    return sorted(_BACKENDS)


def get(name: str | None = None):
    """Kernel module for ``name`` (default: the one selected at import)."""
    name = name or BACKEND
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available()}") from None
