"""Backend selection for the combinatorial kernels.

The compiled extension is used when it imports; setting the environment
variable ``HOPFMI_PURE_PYTHON=1`` forces the pure-Python versions.
"""
import os

from hopfmi import _kernels_py

_compiled = None
if not os.environ.get("HOPFMI_PURE_PYTHON"):
    try:
        from hopfmi import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

if _compiled is not None:
    bounded_vectors = _compiled.bounded_vectors
    sub_vectors = _compiled.sub_vectors

    def crowns(parents):
        if len(parents) > 64:
            return _kernels_py.crowns(parents)
        return _compiled.crowns(parents)

else:
    bounded_vectors = _kernels_py.bounded_vectors
    sub_vectors = _kernels_py.sub_vectors
    crowns = _kernels_py.crowns

__all__ = ["BACKEND", "bounded_vectors", "sub_vectors", "crowns"]
