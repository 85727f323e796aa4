"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it was built; otherwise
the pure-Python twins in ``_pykernels`` are used.  Setting the environment
variable ``SRDOPS_PURE_PYTHON=1`` forces the Python backend.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("SRDOPS_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
face_table = _impl.face_table
ideal_violation = _impl.ideal_violation
count_face_box = _impl.count_face_box
downsets = _impl.downsets

__all__ = [
    "BACKEND",
    "face_table",
    "ideal_violation",
    "count_face_box",
    "downsets",
]
