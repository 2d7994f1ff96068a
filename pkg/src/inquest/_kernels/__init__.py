"""Hot-loop kernels with a compiled core and a pure fallback.

The compiled extension (`_core`, built from Cython) is preferred when it
imports cleanly; otherwise the numpy/pure-Python fallback is used. Both
backends consume random draws in the same order, so results are identical
regardless of which one is active. Set INQUEST_PURE_PYTHON=1 to force the
fallback (used by the benchmark and the parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("INQUEST_PURE_PYTHON"):
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
count_failures = _impl.count_failures
scan_nongain_runs = _impl.scan_nongain_runs

__all__ = ["BACKEND", "count_failures", "scan_nongain_runs"]
