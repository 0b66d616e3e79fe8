"""Kernel dispatch: the compiled extension when built, pure Python otherwise.

Both implementations expose the same four functions (mul, inv, closure_left,
closure_conj) with identical semantics; the environment variable
VERIBV_KERNEL=pure|c forces a specific one.
"""

from __future__ import annotations

import os

from . import pure as _pure

try:
    from . import _corec as _compiled
except ImportError:
    _compiled = None

_forced = os.environ.get("VERIBV_KERNEL", "").strip().lower()
if _forced == "pure":
    _active = _pure
elif _forced == "c":
    if _compiled is None:
        raise ImportError("VERIBV_KERNEL=c requested but the compiled kernel is not built")
    _active = _compiled
elif _forced:
    raise ImportError("unknown VERIBV_KERNEL value %r (use 'pure' or 'c')" % _forced)
else:
    _active = _compiled if _compiled is not None else _pure

KERNEL_NAME = _active.KERNEL_NAME
mul = _active.mul
inv = _active.inv
closure_left = _active.closure_left
closure_conj = _active.closure_conj


def available_kernels() -> tuple[str, ...]:
    return ("pure", "c") if _compiled is not None else ("pure",)


def get_kernel(name: str):
    """Fetch a specific kernel module by name, for parity tests and benchmarks."""
    if name == "pure":
        return _pure
    if name == "c":
        if _compiled is None:
            raise KeyError("compiled kernel not built")
        return _compiled
    raise KeyError("unknown kernel %r" % name)
