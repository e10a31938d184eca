"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``JAFFINE_KERNEL=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _fallback

__all__ = ["BACKEND", "search_bits", "search_bytes", "compiled_available", "get_backend"]

try:  # pragma: no cover - depends on build
    from . import _ckernel as _compiled
except ImportError:  # pragma: no cover
    _compiled = None


def compiled_available() -> bool:
    return _compiled is not None


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` ('compiled', 'python' or None for default)."""
    if name is None:
        name = os.environ.get("JAFFINE_KERNEL", "compiled")
    if name == "compiled" and _compiled is not None:
        return _compiled
    if name not in ("compiled", "python"):
        raise ValueError(f"unknown kernel backend {name!r}")
    return _fallback


_default = get_backend()
BACKEND = "compiled" if _default is _compiled and _compiled is not None else "python"
search_bits = _default.search_bits
search_bytes = _default.search_bytes
