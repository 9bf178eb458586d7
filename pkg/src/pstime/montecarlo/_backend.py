"""Kernel selection: compiled extension when available, NumPy otherwise.

Set ``PSTIME_PURE_PYTHON=1`` in the environment to force the fallback.
"""

import os

from ..errors import ConfigError
from . import _kernel_py

_FORCE_PY = os.environ.get("PSTIME_PURE_PYTHON", "").lower() in {"1", "true", "yes"}

if _FORCE_PY:
    _active = _kernel_py
    COMPILED = False
else:
    try:
        from . import _kernel as _compiled
        _active = _compiled
        COMPILED = True
    except ImportError:
        _active = _kernel_py
        COMPILED = False


def backend_name() -> str:
    """Name of the kernel used by default ('compiled' or 'python')."""
    return "compiled" if COMPILED else "python"


def get_kernel(name: str = "auto"):
    """Resolve a kernel module by name ('auto', 'compiled' or 'python')."""
    if name in (None, "auto"):
        return _active
    if name == "python":
        return _kernel_py
    if name == "compiled":
        if not COMPILED:
            raise ConfigError("compiled kernel requested but the extension "
                              "is not importable (build it or use 'python')")
        return _active
    raise ConfigError(f"unknown kernel {name!r}; expected auto|compiled|python")
