"""Hot kernels: compiled extension when available, NumPy fallback otherwise.

``BACKEND`` names the implementation picked at import time. Setting
``ZETASTRIP_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _fallback

try:
    if os.environ.get("ZETASTRIP_PURE_PYTHON"):
        raise ImportError("pure-python backend requested")
    from . import _core as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _fallback
    BACKEND = "python"

defect = _impl.defect
f3_integrand = _impl.f3_integrand
f2_integrand = _impl.f2_integrand
alt_weighted_sum = _impl.alt_weighted_sum


def available_backends():
    """Map backend name to kernel module for every importable implementation."""
    found = {"python": _fallback}
    try:
        from . import _core
        found["compiled"] = _core
    except ImportError:
        pass
    return found


__all__ = ["BACKEND", "defect", "f3_integrand", "f2_integrand", "alt_weighted_sum",
           "available_backends"]
