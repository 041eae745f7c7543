"""Backend selection for the fidelity kernel.

The compiled extension is used when it was built; otherwise the numpy
fallback. Setting ``PGST_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
fidelity_grid = _kernels_py.fidelity_grid
fidelity_uniform = _kernels_py.fidelity_uniform

if os.environ.get("PGST_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        BACKEND = "compiled"
        fidelity_grid = _compiled.fidelity_grid
        fidelity_uniform = _compiled.fidelity_uniform

__all__ = ["BACKEND", "fidelity_grid", "fidelity_uniform"]
