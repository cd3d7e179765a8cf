"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-numpy
module is the fallback.  ``COLLIDEQ_BACKEND=python|cython`` forces a
choice (forcing ``cython`` on an install without the extension is an
error, not a silent downgrade).  ``select()`` rebinds the active backend
at runtime, which the equivalence tests and the benchmark rely on.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py


def _load_cython() -> ModuleType | None:
    try:
        from . import _kernels_cy  # type: ignore[attr-defined]

        return _kernels_cy
    except ImportError:
        return None


def available_backends() -> dict[str, ModuleType]:
    mods = {"python": _kernels_py}
    cy = _load_cython()
    if cy is not None:
        mods["cython"] = cy
    return mods


def _initial() -> ModuleType:
    forced = os.environ.get("COLLIDEQ_BACKEND", "").strip().lower()
    mods = available_backends()
    if forced:
        if forced not in ("python", "cython"):
            raise ValueError(f"COLLIDEQ_BACKEND must be 'python' or 'cython', got {forced!r}")
        if forced not in mods:
            raise ImportError("COLLIDEQ_BACKEND=cython but the compiled extension is not installed")
        return mods[forced]
    return mods.get("cython", mods["python"])


_active = _initial()


def select(name: str) -> None:
    """Switch the active backend ('python' or 'cython')."""
    global _active, kron, apply_unitary, ptrace, eigh, eigvalsh, active_name
    mods = available_backends()
    if name not in mods:
        raise ValueError(f"backend {name!r} not available (have: {sorted(mods)})")
    _active = mods[name]
    kron = _active.kron
    apply_unitary = _active.apply_unitary
    ptrace = _active.ptrace
    eigh = _active.eigh
    eigvalsh = _active.eigvalsh
    active_name = _active.BACKEND_NAME


kron = _active.kron
apply_unitary = _active.apply_unitary
ptrace = _active.ptrace
eigh = _active.eigh
eigvalsh = _active.eigvalsh
active_name: str = _active.BACKEND_NAME
