"""Backend selection for the solving kernel.

The compiled extension ``scmexplain._kernel`` is used when it was built;
otherwise, or when ``SCMEXPLAIN_PURE_PYTHON`` is set to a non-empty value,
the pure-Python ``scmexplain._pykernel`` is used. Both implement
``solve(tables, fixed)`` and ``scan(tables, fixed, free, watch, expect)``.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    if os.environ.get("SCMEXPLAIN_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

_impl = _compiled if _compiled is not None else _pykernel
BACKEND = "cython" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def use_backend(name: str) -> None:
    """Switch the active backend (``"cython"`` or ``"python"``)."""
    global _impl, BACKEND
    if name == "python":
        _impl = _pykernel
    elif name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        _impl = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


def solve(tables, fixed):
    return _impl.solve(tables, fixed)


def scan(tables, fixed, free, watch, expect):
    return _impl.scan(tables, fixed, free, watch, expect)
