"""Dense complex linear algebra for small Hilbert spaces (dims 2, 4, 8).

States and operators are plain complex128 numpy arrays; density matrices
get a thin validated wrapper carrying the tensor-factor dimensions.
Tolerances are module constants so the contracts stay deterministic:
algebraic identities at 1e-12, spectral reconstructions at 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import backend

ATOL_ALGEBRAIC = 1e-12
ATOL_SPECTRAL = 1e-10

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _as_square_complex(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def is_hermitian(m: np.ndarray, atol: float = ATOL_SPECTRAL) -> bool:
    return bool(np.abs(m - m.conj().T).max() <= atol)


class Spectrum(NamedTuple):
    """Eigendecomposition of a Hermitian matrix: ascending values, column vectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix with factor dims.

    ``dims`` lists the tensor-factor dimensions in order; their product
    must equal the matrix dimension.  Validation runs on construction;
    use :meth:`from_computed` for matrices assembled from numerics, which
    clips eigenvalues in [-1e-10, 0) to zero and renormalizes the trace
    before validating.
    """

    mat: np.ndarray
    dims: tuple[int, ...]
    _validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        mat = _as_square_complex(self.mat, "density matrix")
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if int(np.prod(self.dims)) != mat.shape[0]:
            raise ValueError(f"subsystem dims {self.dims} do not multiply to {mat.shape[0]}")
        if self._validate:
            if np.abs(mat - mat.conj().T).max() > ATOL_ALGEBRAIC:
                raise ValueError("density matrix is not Hermitian within 1e-12")
            if abs(mat.trace() - 1.0) > ATOL_ALGEBRAIC:
                raise ValueError(f"density matrix trace {mat.trace():.3e} != 1 within 1e-12")
            if backend.eigvalsh(mat).min() < -ATOL_SPECTRAL:
                raise ValueError("density matrix has an eigenvalue below -1e-10")
        mat.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def from_computed(cls, mat: np.ndarray, dims: Sequence[int]) -> "DensityMatrix":
        """Build from a numerically computed matrix, absorbing rounding noise.

        Hermitizes, clips eigenvalues in [-1e-10, 0) to zero and
        renormalizes the trace.  Eigenvalues below -1e-10 still fail
        validation: that is a genuine positivity violation, not noise.
        """
        mat = _as_square_complex(mat)
        mat = 0.5 * (mat + mat.conj().T)
        w = backend.eigvalsh(mat)
        if w.min() < 0.0 and w.min() >= -ATOL_SPECTRAL:
            vals, vecs = backend.eigh(mat)
            vals = np.clip(vals, 0.0, None)
            mat = (vecs * vals) @ vecs.conj().T
            mat = 0.5 * (mat + mat.conj().T)
        tr = mat.trace().real
        if abs(tr - 1.0) <= 1e-9 and tr > 0:
            mat = mat / tr
        return cls(mat, tuple(dims))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; entry ((i*db+k),(j*db+l)) = a[i,j] * b[k,l]."""
    a = _as_square_complex(a, "kron operand")
    b = _as_square_complex(b, "kron operand")
    return backend.kron(a, b)


def partial_trace_array(
    mat: np.ndarray, dims: Sequence[int], keep: Sequence[int]
) -> np.ndarray:
    """Partial trace on a raw array; ``keep`` indices stay, in original order."""
    dims = tuple(int(d) for d in dims)
    keep_sorted = tuple(sorted(set(int(k) for k in keep)))
    if not keep_sorted:
        raise ValueError("keep must name at least one subsystem")
    if keep_sorted[0] < 0 or keep_sorted[-1] >= len(dims):
        raise ValueError(f"keep {keep_sorted} out of range for {len(dims)} subsystems")
    return backend.ptrace(np.asarray(mat, dtype=complex), dims, keep_sorted)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the kept subsystems."""
    out = partial_trace_array(rho.mat, rho.dims, keep)
    kept_dims = tuple(rho.dims[i] for i in sorted(set(int(k) for k in keep)))
    return DensityMatrix.from_computed(out, kept_dims)


def hermitian_eig(h: np.ndarray) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix (ascending eigenvalues)."""
    h = _as_square_complex(h, "hermitian_eig input")
    if not is_hermitian(h):
        raise ValueError("hermitian_eig requires a Hermitian matrix (within 1e-10)")
    w, v = backend.eigh(h)
    return Spectrum(w, v)


def hermitian_function(h: np.ndarray, f: Callable[[float], complex]) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum."""
    w, v = hermitian_eig(h)
    with np.errstate(all="ignore"):
        fw = np.array([f(x) for x in w], dtype=complex)
    if not np.all(np.isfinite(fw.view(float))):
        raise ValueError("function is undefined (non-finite) on an eigenvalue")
    return (v * fw) @ v.conj().T
