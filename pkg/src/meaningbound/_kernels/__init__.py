"""Posting-list kernels: compiled core with a pure-Python fallback.

The compiled module is optional; whichever is available becomes the active
backend at import time. ``MEANINGBOUND_KERNELS=pure`` (or ``native``) in the
environment forces the choice; :func:`use` swaps it at runtime, which the
benchmark and the parity tests rely on.
"""

import os

from meaningbound._kernels import pure

try:
    from meaningbound._kernels import _native
except ImportError:
    _native = None

_BACKENDS = {"pure": pure}
if _native is not None:
    _BACKENDS["native"] = _native

_forced = os.environ.get("MEANINGBOUND_KERNELS", "").strip().lower()
if _forced:
    if _forced not in _BACKENDS:
        raise ImportError(
            f"MEANINGBOUND_KERNELS={_forced!r} is not available; "
            f"built backends: {sorted(_BACKENDS)}"
        )
    _active = _BACKENDS[_forced]
else:
    _active = _native if _native is not None else pure


def active():
    """The module implementing the kernel contract for the current backend."""
    return _active


def backend() -> str:
    return "native" if _active is _native else "pure"


def available() -> list[str]:
    return sorted(_BACKENDS)


def use(name: str) -> None:
    """Switch the active backend ('pure' or 'native')."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; built: {sorted(_BACKENDS)}")
    _active = _BACKENDS[name]
