"""Kernel backend selection.

The compiled extension is used when it imported cleanly, the numpy fallback
otherwise. PPCOUNT_BACKEND=python|cython overrides the choice, and use()
switches at runtime (the benchmark and the parity tests rely on that). Call
sites must go through the module attributes, never `from` imports.
"""

from __future__ import annotations

import os

from ppcount import _kernels_py

_IMPLS = {"python": _kernels_py}
try:
    from ppcount import _kernels as _compiled

    _IMPLS["cython"] = _compiled
except ImportError:
    _compiled = None


def available() -> list[str]:
    return sorted(_IMPLS)


def use(name: str) -> None:
    """Route the kernel entry points through the named implementation."""
    global BACKEND, hist_eval, roots_scan
    if name not in _IMPLS:
        raise ValueError(f"backend {name!r} not available; have {available()}")
    BACKEND = name
    hist_eval = _IMPLS[name].hist_eval
    roots_scan = _IMPLS[name].roots_scan


_forced = os.environ.get("PPCOUNT_BACKEND")
if _forced is not None and _forced not in _IMPLS:
    raise ImportError(
        f"PPCOUNT_BACKEND={_forced!r} is not available; have {available()}"
    )
use(_forced or ("cython" if _compiled is not None else "python"))
