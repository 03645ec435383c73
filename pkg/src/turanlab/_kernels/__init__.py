"""Hot numerical kernels with a compiled core and a numpy fallback.

The compiled extension is used when it imports cleanly; setting the
environment variable ``TURANLAB_PURE=1`` forces the numpy versions.
"""
import os

from . import _pykernels as python_impl

try:
    if os.environ.get("TURANLAB_PURE", "") not in ("", "0"):
        raise ImportError("pure-python kernels requested")
    from . import _ckernels as compiled_impl
except ImportError:
    compiled_impl = None

_impl = compiled_impl if compiled_impl is not None else python_impl
BACKEND = "cython" if compiled_impl is not None else "python"

hyp1f1_series = _impl.hyp1f1_series
lgamma_array = _impl.lgamma_array
vandermonde_sq = _impl.vandermonde_sq

__all__ = ["BACKEND", "compiled_impl", "python_impl",
           "hyp1f1_series", "lgamma_array", "vandermonde_sq"]
