"""Evaluation kernels with a compiled fast path and a pure fallback.

Both backends expose the same three entry points over the same flat
integer programs (see opcodes.py): modal_mask, ineq_valid_all and
fo_eval.  `impl` names the active backend; callers should look it up at
call time (`kernels.impl.modal_mask(...)`) so that use() can switch it.
Set ALBA_PURE_KERNEL=1 before import to start on the fallback even when
the extension is built.
"""
import os

from . import pure

try:
    from . import _speedups
except ImportError:
    _speedups = None

if os.environ.get("ALBA_PURE_KERNEL") == "1" or _speedups is None:
    impl = pure
else:
    impl = _speedups


def available() -> tuple[str, ...]:
    """Backend names that can be selected on this installation."""
    if _speedups is None:
        return ("pure",)
    return ("compiled", "pure")


def active() -> str:
    return impl.BACKEND


def use(name: str) -> str:
    """Switch the active backend; returns the previous name."""
    global impl
    previous = impl.BACKEND
    if name == "pure":
        impl = pure
    elif name == "compiled":
        if _speedups is None:
            raise RuntimeError("compiled kernels are not built")
        impl = _speedups
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous
