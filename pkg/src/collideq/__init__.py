"""Collision-model simulator for a spin-1/2 open quantum system.

Discrete collisions with a thermal spin environment: homogenization,
tunable non-Markovianity through inter-environment couplings, and
checks of the dissipation bound beta*dQ >= dS, emitted as CSV series.
"""

from . import backend
from .collider import (
    CellState,
    EnvSampler,
    RunSpec,
    StepRecord,
    Trajectory,
    cell_step,
    markov_step,
    run_trajectory,
)
from .config import RunConfig, load_config, parse_config
from .smallmat import (
    DensityMatrix,
    Spectrum,
    hermitian_eig,
    hermitian_function,
    kron,
    partial_trace,
)
from .spinmodel import (
    ModelParams,
    free_evolution,
    local_hamiltonian,
    partial_swap,
    thermal_state,
)
from .thermoprobe import (
    BLPResult,
    blp_maximize,
    blp_measure,
    fidelity,
    landauer_series,
    mutual_information,
    trace_distance,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "BLPResult",
    "CellState",
    "DensityMatrix",
    "EnvSampler",
    "ModelParams",
    "RunConfig",
    "RunSpec",
    "Spectrum",
    "StepRecord",
    "Trajectory",
    "backend",
    "blp_maximize",
    "blp_measure",
    "cell_step",
    "fidelity",
    "free_evolution",
    "hermitian_eig",
    "hermitian_function",
    "kron",
    "landauer_series",
    "load_config",
    "local_hamiltonian",
    "markov_step",
    "mutual_information",
    "parse_config",
    "partial_swap",
    "partial_trace",
    "run_trajectory",
    "thermal_state",
    "trace_distance",
    "von_neumann_entropy",
]
