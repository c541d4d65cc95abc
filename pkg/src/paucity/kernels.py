"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports and the
environment variable ``PAUCITY_PURE_PYTHON`` is unset or empty; otherwise
the pure-Python ``_pykernels`` module takes its place.  Both expose
``brute_scan``, ``divsearch_linear`` and ``divsearch_nonlinear`` with
identical semantics.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    if os.environ.get("PAUCITY_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"

#: inputs to the compiled kernels must fit in a signed 64-bit integer
C_INPUT_LIMIT = 1 << 63


def available() -> tuple[str, ...]:
    return ("compiled", "python") if _ckernels is not None else ("python",)


def get(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` (default: the selected one)."""
    name = name or BACKEND
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def fits_c(*values) -> bool:
    """True when every int (possibly nested in lists/tuples) fits in int64."""
    stack = list(values)
    while stack:
        v = stack.pop()
        if isinstance(v, (list, tuple)):
            stack.extend(v)
        elif not -C_INPUT_LIMIT <= v < C_INPUT_LIMIT:
            return False
    return True


def choose(requested: str | None, *inputs) -> str:
    """Pick the backend for one call; large inputs force pure Python."""
    name = requested or BACKEND
    if name == "compiled" and not fits_c(*inputs):
        return "python"
    return name
