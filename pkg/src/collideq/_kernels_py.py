"""Pure-numpy implementations of the dense kernels.

Fallback backend used when the compiled extension is unavailable.  Same
surface as ``_kernels_cy``: Kronecker product, unitary conjugation,
partial trace and the dense Hermitian eigensolver, all on complex128
square matrices.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_LETTERS = "abcdefghijklmnopqrstuvwx"


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def apply_unitary(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """U @ rho @ U†."""
    return u @ rho @ u.conj().T


def ptrace(rho: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep`` (kept order preserved)."""
    n = len(dims)
    row = list(_LETTERS[:n])
    col = list(_LETTERS[n : 2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    expr = "".join(row) + "".join(col) + "->" + out
    d_keep = 1
    for i in keep:
        d_keep *= dims[i]
    return np.einsum(expr, rho.reshape(dims + dims)).reshape(d_keep, d_keep)


def eigh(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    return np.linalg.eigh(h)


def eigvalsh(h: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(h)
