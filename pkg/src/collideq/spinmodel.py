"""Physical building blocks: local Hamiltonians, Gibbs states, collision
and free-evolution unitaries.

Everything is dimensionless (interaction and free-evolution times are
absorbed into the couplings and frequencies).  Basis convention:
|0> = (1,0) with sigma_z|0> = +|0>, so |0> is the *higher*-energy level
of H = (omega/2) sigma_z and a positive-temperature Gibbs state puts the
larger population on |1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import smallmat
from .smallmat import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, DensityMatrix

J_MAX = math.pi / 4

U_SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]],
    dtype=complex,
)


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model parameters.

    Couplings live in [0, pi/4]: the upper end is a complete swap, the
    lower end no interaction.
    """

    omega_s: float
    omega_e: float
    j_se: float
    j_ee: float = 0.0
    beta: float = 1.0

    def __post_init__(self):
        if not (self.omega_s > 0 and self.omega_e > 0):
            raise ValueError("frequencies must be positive")
        for name in ("j_se", "j_ee"):
            j = getattr(self, name)
            if not (0.0 <= j <= J_MAX + 1e-15):
                raise ValueError(f"{name}={j} outside [0, pi/4]")
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")


def local_hamiltonian(omega: float) -> np.ndarray:
    """(omega/2) sigma_z."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    return 0.5 * omega * SIGMA_Z


def interaction_hamiltonian(j: float) -> np.ndarray:
    """Isotropic two-qubit exchange j*(xx + yy + zz); generates the partial swap."""
    return j * (
        smallmat.kron(SIGMA_X, SIGMA_X)
        + smallmat.kron(SIGMA_Y, SIGMA_Y)
        + smallmat.kron(SIGMA_Z, SIGMA_Z)
    )


def thermal_state(beta: float, omega: float) -> DensityMatrix:
    """Gibbs state exp(-beta*H)/Z of the local Hamiltonian (omega/2) sigma_z.

    Negative beta is a valid population-inverted state; beta=0 is the
    maximally mixed state.  Evaluated through tanh for stability at
    large |beta*omega|.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if not math.isfinite(beta):
        raise ValueError("beta must be finite")
    t = math.tanh(0.5 * beta * omega)
    mat = np.diag([0.5 * (1.0 - t), 0.5 * (1.0 + t)]).astype(complex)
    return DensityMatrix(mat, (2,))


def partial_swap(j: float) -> np.ndarray:
    """Two-qubit partial-swap unitary exp(-i j (xx+yy+zz)).

    Closed form e^{ij} (cos(2j) I - i sin(2j) U_swap): identity at j=0,
    a complete swap (up to global phase) at j=pi/4, swap probability
    sin^2(2j) in between.
    """
    if not (0.0 <= j <= J_MAX + 1e-15):
        raise ValueError(f"coupling {j} outside [0, pi/4]")
    phase = complex(math.cos(j), math.sin(j))
    return phase * (
        math.cos(2 * j) * np.eye(4, dtype=complex) - 1j * math.sin(2 * j) * U_SWAP
    )


def free_hamiltonian(params: ModelParams, n_parties: int) -> np.ndarray:
    """Sum of local Hamiltonians; party 0 is the system, the rest environment."""
    if n_parties not in (2, 3):
        raise ValueError("n_parties must be 2 or 3")
    hs = local_hamiltonian(params.omega_s)
    he = local_hamiltonian(params.omega_e)
    eye = IDENTITY_2
    if n_parties == 2:
        return smallmat.kron(hs, eye) + smallmat.kron(eye, he)
    return (
        smallmat.kron(smallmat.kron(hs, eye), eye)
        + smallmat.kron(smallmat.kron(eye, he), eye)
        + smallmat.kron(smallmat.kron(eye, eye), he)
    )


def free_evolution(params: ModelParams, n_parties: int) -> np.ndarray:
    """Diagonal unitary exp(-i H0) for one inter-collision interval."""
    h0 = free_hamiltonian(params, n_parties)
    return np.diag(np.exp(-1j * np.diag(h0)))
