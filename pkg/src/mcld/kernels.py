"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``MCLD_PURE_PYTHON=1`` to force the fallback.  Row sets larger than the
compiled kernel's 64-bit words always go to the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

MODE_PAIRS = _kernels_py.MODE_PAIRS
MODE_BIPARTITION = _kernels_py.MODE_BIPARTITION
MODE_MAPS = _kernels_py.MODE_MAPS

_compiled = None
if os.environ.get("MCLD_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def make_dim_solver(label_masks, n_rows, mode, maps0=None, maps1=None, max_nodes=5_000_000,
                    backend: str | None = None):
    use = backend or BACKEND
    if use == "compiled" and _compiled is not None and n_rows <= _compiled.MAX_ROWS \
            and len(label_masks[0]) <= _compiled.MAX_ROWS:
        return _compiled.DimSolver(label_masks, n_rows, mode, maps0, maps1, max_nodes)
    return _kernels_py.DimSolver(label_masks, n_rows, mode, maps0, maps1, max_nodes)


def mwu_run(A, gains, sum_d, q_count, t0, iters, backend: str | None = None):
    use = backend or BACKEND
    if use == "compiled" and _compiled is not None:
        return _compiled.mwu_run(A, gains, sum_d, q_count, t0, iters)
    return _kernels_py.mwu_run(A, gains, sum_d, q_count, t0, iters)
