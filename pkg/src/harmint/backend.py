"""Import-time selection between the compiled and pure-NumPy kernels.

Set HARMINT_BACKEND=python to force the fallback (used by the parity
tests and the benchmark script).
"""

from __future__ import annotations

import os

from . import _purekern

if os.environ.get("HARMINT_BACKEND", "").lower() == "python":
    _impl = _purekern
    BACKEND = "python"
else:
    try:
        from . import _fastkern as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _purekern
        BACKEND = "python"

ps_values = _impl.ps_values
ps_gradients = _impl.ps_gradients

__all__ = ["BACKEND", "ps_values", "ps_gradients"]
