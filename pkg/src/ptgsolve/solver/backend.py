"""Sweep-kernel backend selection.

The compiled extension is preferred; the pure-Python twin is used when the
extension failed to build or when PTGSOLVE_PURE=1 is set.  Both expose the
same ``run_sweeps`` contract and sentinel constants.
"""

import os

from . import _sweep_py

if os.environ.get("PTGSOLVE_PURE") == "1":
    _impl = _sweep_py
    BACKEND = "python"
else:
    try:
        from . import _sweep as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _sweep_py
        BACKEND = "python"

run_sweeps = _impl.run_sweeps
INF = _impl.INF
NEG_INF = _impl.NEG_INF
STATUS_STABLE = _impl.STATUS_STABLE
STATUS_CUTOFF = _impl.STATUS_CUTOFF
STATUS_MAXED = _impl.STATUS_MAXED
