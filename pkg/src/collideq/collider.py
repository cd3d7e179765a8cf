"""Collision dynamics engines.

Two modes share one bookkeeping convention:

* ``markov``: the system meets a fresh environment particle each step,
  evolving through V_SE followed by the two-party free evolution.
* ``cell``: a three-body working set (system + two environment
  particles).  Each iteration collides system with the resident
  particle, then the two environment particles with each other, applies
  the free evolution, and traces the older particle away; the surviving
  system-environment marginal carries memory into the next step.

Per-step records store *decreases* of system energy and entropy
(delta_U = Tr[H_S (rho_{n-1} - rho_n)], delta_S = S_{n-1} - S_n) and the
heat absorbed by the environment (delta_Q = Tr[H_E (post - pre)]), so
work = delta_Q - delta_U is the energy injected by the collision unitary
and vanishes identically on resonance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal, Optional

import numpy as np

from . import backend, thermoprobe
from .smallmat import IDENTITY_2, DensityMatrix
from .spinmodel import (
    ModelParams,
    free_evolution,
    local_hamiltonian,
    partial_swap,
    thermal_state,
)

FreeMode = Literal["per-iteration", "per-collision", "off"]
_FREE_MODES = ("per-iteration", "per-collision", "off")

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class EnvSampler:
    """Inverse-temperature source for the incoming environment particles.

    ``fixed`` always yields ``beta0``; ``gaussian`` draws from
    N(beta0, sigma_beta), either redrawing non-positive values
    (``resample-positive``) or passing them through as population-inverted
    preparations (``allow-negative``).  The same seed always yields the
    same sequence.
    """

    mode: Literal["fixed", "gaussian"] = "fixed"
    beta0: float = 1.0
    sigma_beta: float = 0.0
    seed: int = 0
    truncation: Literal["resample-positive", "allow-negative"] = "resample-positive"

    def __post_init__(self):
        if self.mode not in ("fixed", "gaussian"):
            raise ValueError(f"unknown sampler mode {self.mode!r}")
        if self.sigma_beta < 0:
            raise ValueError("sigma_beta must be >= 0")
        if not math.isfinite(self.beta0):
            raise ValueError("beta0 must be finite")
        if self.truncation not in ("resample-positive", "allow-negative"):
            raise ValueError(f"unknown truncation {self.truncation!r}")
        if self.mode == "fixed" and self.sigma_beta != 0.0:
            raise ValueError("fixed mode requires sigma_beta = 0")

    def betas(self, count: int, stream_index: int = 0) -> np.ndarray:
        """The first ``count`` inverse temperatures of stream ``stream_index``."""
        if self.mode == "fixed" or self.sigma_beta == 0.0:
            return np.full(count, self.beta0)
        rng = np.random.default_rng((self.seed ^ stream_index) & _MASK64)
        if self.truncation == "allow-negative":
            return rng.normal(self.beta0, self.sigma_beta, size=count)
        out = np.empty(count)
        for i in range(count):
            b = rng.normal(self.beta0, self.sigma_beta)
            while b <= 0.0:
                b = rng.normal(self.beta0, self.sigma_beta)
            out[i] = b
        return out


@dataclass(frozen=True)
class CellState:
    """Correlated system + resident-environment marginal between iterations."""

    rho: DensityMatrix
    step_index: int = 0

    def __post_init__(self):
        if self.rho.dims != (2, 2):
            raise ValueError(f"cell state must have dims (2, 2), got {self.rho.dims}")


@dataclass(frozen=True)
class StepRecord:
    """Observables of one collision step (conventions in the module docstring)."""

    n: int
    delta_U: float
    delta_Q: float
    work: float
    entropy_S: float
    delta_S: float
    landauer_gap: float
    mutual_info_pre: float
    bloch: tuple[float, float, float]


@dataclass(frozen=True)
class RunSpec:
    """Everything run_trajectory needs except the step count."""

    params: ModelParams
    sampler: EnvSampler
    initial: DensityMatrix
    mode: Literal["markov", "cell"] = "cell"
    free_mode: FreeMode = "per-iteration"

    def __post_init__(self):
        if self.mode not in ("markov", "cell"):
            raise ValueError(f"unknown dynamics mode {self.mode!r}")
        if self.free_mode not in _FREE_MODES:
            raise ValueError(f"unknown free_mode {self.free_mode!r}")
        if self.initial.dims != (2,):
            raise ValueError("initial state must be a single qubit")

    def fingerprint(self) -> tuple:
        """Configuration identity, excluding the initial state."""
        return (self.params, self.sampler, self.mode, self.free_mode)


@dataclass(frozen=True)
class Trajectory:
    """Step records plus the per-step system marginals of one run."""

    spec: RunSpec
    n_steps: int
    stream_index: int
    records: tuple[StepRecord, ...]
    states: tuple[DensityMatrix, ...]  # length n_steps + 1, states[0] = initial
    final_cell: Optional[DensityMatrix]  # (system, resident-particle) marginal, cell mode

    @property
    def seed(self) -> int:
        return self.spec.sampler.seed


class _Ops:
    """Operators precomputed once per (params, free_mode)."""

    def __init__(self, params: ModelParams, free_mode: FreeMode = "per-iteration"):
        self.params = params
        self.hs = local_hamiltonian(params.omega_s)
        self.he = local_hamiltonian(params.omega_e)
        self.he_pair = backend.kron(self.he, IDENTITY_2) + backend.kron(IDENTITY_2, self.he)
        v_se = partial_swap(params.j_se)
        v_ee = partial_swap(params.j_ee)
        # markov chain: always one free evolution after the collision
        self.u_markov = free_evolution(params, 2) @ v_se
        vse3 = backend.kron(v_se, IDENTITY_2)
        vee3 = backend.kron(IDENTITY_2, v_ee)
        u0_3 = free_evolution(params, 3)
        if free_mode == "per-iteration":
            self.u_cell = u0_3 @ vee3 @ vse3
        elif free_mode == "per-collision":
            self.u_cell = u0_3 @ vee3 @ u0_3 @ vse3
        elif free_mode == "off":
            self.u_cell = vee3 @ vse3
        else:
            raise ValueError(f"unknown free_mode {free_mode!r}")


def _energy(h: np.ndarray, rho: np.ndarray) -> float:
    return float(np.trace(h @ rho).real)


def markov_step(
    rho_s: DensityMatrix,
    env: DensityMatrix,
    params: ModelParams,
    _ops: Optional[_Ops] = None,
) -> tuple[DensityMatrix, DensityMatrix, StepRecord]:
    """One memoryless collision: joint unitary on (system ⊗ fresh particle).

    Returns the new system marginal, the outgoing environment marginal
    and the step record (with n = 0; run_trajectory renumbers).
    """
    ops = _ops if _ops is not None else _Ops(params)
    joint = backend.apply_unitary(ops.u_markov, backend.kron(rho_s.mat, env.mat))
    new_s = backend.ptrace(joint, (2, 2), (0,))
    env_post = backend.ptrace(joint, (2, 2), (1,))

    s_pre = thermoprobe.von_neumann_entropy(rho_s)
    s_post = thermoprobe.von_neumann_entropy(new_s)
    delta_u = _energy(ops.hs, rho_s.mat) - _energy(ops.hs, new_s)
    delta_q = _energy(ops.he, env_post) - _energy(ops.he, env.mat)
    delta_s = s_pre - s_post
    record = StepRecord(
        n=0,
        delta_U=delta_u,
        delta_Q=delta_q,
        work=delta_q - delta_u,
        entropy_S=s_post,
        delta_S=delta_s,
        landauer_gap=params.beta * delta_q - delta_s,
        mutual_info_pre=0.0,
        bloch=thermoprobe.bloch_vector(new_s),
    )
    return (
        DensityMatrix.from_computed(new_s, (2,)),
        DensityMatrix.from_computed(env_post, (2,)),
        record,
    )


def cell_step(
    cell: CellState,
    fresh_env: DensityMatrix,
    params: ModelParams,
    free_mode: FreeMode = "per-iteration",
    _ops: Optional[_Ops] = None,
) -> tuple[CellState, StepRecord]:
    """One iteration of the three-body cell.

    The resident particle (party 1) collides with the system, then with
    the fresh particle (party 2), and is traced away; heat is measured on
    the environment pair with the additive Hamiltonian H_E⊗I + I⊗H_E.
    """
    if fresh_env.dims != (2,):
        raise ValueError("fresh environment particle must be a single qubit")
    ops = _ops if _ops is not None else _Ops(params, free_mode)

    mi_pre = thermoprobe.mutual_information(cell.rho)
    rho3 = backend.kron(cell.rho.mat, fresh_env.mat)
    env_pre = backend.ptrace(rho3, (2, 2, 2), (1, 2))
    sys_pre = backend.ptrace(cell.rho.mat, (2, 2), (0,))

    rho3 = backend.apply_unitary(ops.u_cell, rho3)

    env_post = backend.ptrace(rho3, (2, 2, 2), (1, 2))
    sys_post = backend.ptrace(rho3, (2, 2, 2), (0,))
    next_cell = backend.ptrace(rho3, (2, 2, 2), (0, 2))

    s_pre = thermoprobe.von_neumann_entropy(sys_pre)
    s_post = thermoprobe.von_neumann_entropy(sys_post)
    delta_u = _energy(ops.hs, sys_pre) - _energy(ops.hs, sys_post)
    delta_q = _energy(ops.he_pair, env_post) - _energy(ops.he_pair, env_pre)
    delta_s = s_pre - s_post
    record = StepRecord(
        n=cell.step_index + 1,
        delta_U=delta_u,
        delta_Q=delta_q,
        work=delta_q - delta_u,
        entropy_S=s_post,
        delta_S=delta_s,
        landauer_gap=params.beta * delta_q - delta_s,
        mutual_info_pre=mi_pre,
        bloch=thermoprobe.bloch_vector(sys_post),
    )
    new_cell = CellState(
        rho=DensityMatrix.from_computed(next_cell, (2, 2)),
        step_index=cell.step_index + 1,
    )
    return new_cell, record


def run_trajectory(spec: RunSpec, n_steps: int, stream_index: int = 0) -> Trajectory:
    """Iterate the configured dynamics for ``n_steps`` collisions.

    Deterministic given (spec, n_steps, stream_index): environment
    preparations come from the sampler stream ``sampler.seed ^ stream_index``.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    params = spec.params
    ops = _Ops(params, spec.free_mode)
    records: list[StepRecord] = []
    states: list[DensityMatrix] = [spec.initial]

    if spec.mode == "markov":
        betas = spec.sampler.betas(n_steps, stream_index)
        rho_s = spec.initial
        final_cell = None
        for n in range(n_steps):
            env = thermal_state(betas[n], params.omega_e)
            rho_s, _, rec = markov_step(rho_s, env, params, _ops=ops)
            records.append(replace(rec, n=n + 1))
            states.append(rho_s)
    else:
        betas = spec.sampler.betas(n_steps + 1, stream_index)
        first = thermal_state(betas[0], params.omega_e)
        cell = CellState(
            rho=DensityMatrix.from_computed(
                backend.kron(spec.initial.mat, first.mat), (2, 2)
            ),
            step_index=0,
        )
        for n in range(n_steps):
            fresh = thermal_state(betas[n + 1], params.omega_e)
            cell, rec = cell_step(cell, fresh, params, spec.free_mode, _ops=ops)
            records.append(rec)
            states.append(
                DensityMatrix.from_computed(
                    backend.ptrace(cell.rho.mat, (2, 2), (0,)), (2,)
                )
            )
        final_cell = cell.rho

    return Trajectory(
        spec=spec,
        n_steps=n_steps,
        stream_index=stream_index,
        records=tuple(records),
        states=tuple(states),
        final_cell=final_cell,
    )
