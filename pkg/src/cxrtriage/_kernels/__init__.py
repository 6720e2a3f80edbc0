"""ROC sweep kernel with backend selection at import time.

The compiled Cython extension is used when it built successfully; otherwise
the pure-Python implementation takes over. Set ``CXRTRIAGE_PURE_KERNELS=1``
to force the pure backend (useful for benchmarking and debugging). Both
backends are contractually identical; ``tests/test_kernels.py`` pins the
equivalence.
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("CXRTRIAGE_PURE_KERNELS"):
    _impl = pure
else:
    try:
        from . import _roc_sweep as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND: str = _impl.BACKEND
roc_sweep = _impl.roc_sweep

__all__ = ["BACKEND", "roc_sweep", "pure"]
