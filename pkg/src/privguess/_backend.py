"""Selects the simplex pivot kernel at import time.

The compiled extension is preferred when present; the NumPy fallback is used
otherwise or when ``PRIVGUESS_PURE_PYTHON`` is set (any non-empty value).
Both kernels implement the same contract; see ``_simplex_py``.
"""

from __future__ import annotations

import os

from . import _simplex_py

STATUS_OPTIMAL = _simplex_py.STATUS_OPTIMAL
STATUS_UNBOUNDED = _simplex_py.STATUS_UNBOUNDED
STATUS_BUDGET = _simplex_py.STATUS_BUDGET

if os.environ.get("PRIVGUESS_PURE_PYTHON"):
    _impl = _simplex_py
else:
    try:
        from . import _simplex_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _simplex_py

run_simplex = _impl.run_simplex
KERNEL_BACKEND: str = _impl.BACKEND


def available_kernels() -> dict[str, object]:
    """Name -> kernel callable, for benchmarks and parity tests."""
    kernels: dict[str, object] = {"python": _simplex_py.run_simplex}
    try:
        from . import _simplex_cy
        kernels["compiled"] = _simplex_cy.run_simplex
    except ImportError:
        pass
    return kernels
