"""Information-theoretic and thermodynamic observables.

Entropies are in nats (natural logarithm) throughout; that is what makes
the dissipation bound beta*dQ >= dS dimensionally consistent.  Functions
taking states accept either a DensityMatrix or a raw complex array.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from .smallmat import SIGMA_X, SIGMA_Y, SIGMA_Z, DensityMatrix

LN2 = math.log(2.0)

#: Instantaneous-gap threshold separating rounding noise from a genuine
#: bound violation (real violations in this model are O(1e-2)).
VIOLATION_ATOL = 1e-10


def _mat(rho) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def von_neumann_entropy(rho) -> float:
    """-Tr(rho ln rho) in nats, with 0 ln 0 = 0.  Lies in [0, ln dim]."""
    w = backend.eigvalsh(_mat(rho))
    s = 0.0
    for x in w:
        if x > 1e-15:
            s -= x * math.log(x)
    return max(0.0, s)


def trace_distance(rho1, rho2) -> float:
    """Half the trace norm of the difference; distinguishability in [0, 1]."""
    m1, m2 = _mat(rho1), _mat(rho2)
    if m1.shape != m2.shape:
        raise ValueError(f"dimension mismatch: {m1.shape} vs {m2.shape}")
    w = backend.eigvalsh(m1 - m2)
    return min(1.0, max(0.0, 0.5 * float(np.abs(w).sum())))


def fidelity(rho1, rho2) -> float:
    """Squared Uhlmann fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 in [0, 1]."""
    m1, m2 = _mat(rho1), _mat(rho2)
    if m1.shape != m2.shape:
        raise ValueError(f"dimension mismatch: {m1.shape} vs {m2.shape}")
    w, v = backend.eigh(m1)
    sq = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    inner = backend.eigvalsh(sq @ m2 @ sq)
    root = float(np.sqrt(np.clip(inner, 0.0, None)).sum())
    return min(1.0, max(0.0, root * root))


def bloch_vector(rho) -> tuple[float, float, float]:
    """(⟨σx⟩, ⟨σy⟩, ⟨σz⟩) of a qubit state."""
    m = _mat(rho)
    return (
        float(np.trace(m @ SIGMA_X).real),
        float(np.trace(m @ SIGMA_Y).real),
        float(np.trace(m @ SIGMA_Z).real),
    )


def mutual_information(rho_joint) -> float:
    """S(A) + S(B) - S(AB) of a two-qubit state; in [0, 2 ln 2]."""
    m = _mat(rho_joint)
    if isinstance(rho_joint, DensityMatrix) and rho_joint.dims != (2, 2):
        raise ValueError(f"mutual_information needs dims (2, 2), got {rho_joint.dims}")
    if m.shape != (4, 4):
        raise ValueError(f"mutual_information needs a 4x4 state, got {m.shape}")
    sa = von_neumann_entropy(backend.ptrace(m, (2, 2), (0,)))
    sb = von_neumann_entropy(backend.ptrace(m, (2, 2), (1,)))
    return max(0.0, sa + sb - von_neumann_entropy(m))


# ---------------------------------------------------------------------------
# trajectory-level series


@dataclass(frozen=True)
class LandauerSeries:
    """Instantaneous and cumulative dissipation-bound gaps of a run."""

    beta: float
    gaps: np.ndarray  # g_n = beta*dQ_n - dS_n, one entry per step
    cumulative: np.ndarray  # G_n = beta*Q_n - (S_0 - S_n)
    violations: tuple[int, ...]  # 1-based steps with g_n < -1e-10


def landauer_series(traj, beta: float) -> LandauerSeries:
    """Per-step and cumulative gaps of ``beta*dQ >= dS`` along a trajectory.

    Recomputes the gaps at the given inverse temperature; the cumulative
    entropy term telescopes, so G_n is exactly the running sum of g_n.
    """
    dq = np.array([r.delta_Q for r in traj.records])
    ds = np.array([r.delta_S for r in traj.records])
    gaps = beta * dq - ds
    s0 = von_neumann_entropy(traj.states[0])
    s_n = np.array([r.entropy_S for r in traj.records])
    cumulative = beta * np.cumsum(dq) - (s0 - s_n)
    violations = tuple(
        int(i + 1) for i in range(len(gaps)) if gaps[i] < -VIOLATION_ATOL
    )
    return LandauerSeries(beta=beta, gaps=gaps, cumulative=cumulative, violations=violations)


@dataclass(frozen=True)
class BLPResult:
    """Accumulated trace-distance backflow between two evolutions."""

    measure: float
    positive_intervals: tuple[tuple[int, int], ...]  # inclusive step ranges
    pair: tuple[DensityMatrix, DensityMatrix]
    distances: np.ndarray  # D_n for n = 0..n_steps


def distance_series(traj1, traj2) -> np.ndarray:
    """D(rho1_n, rho2_n) for n = 0..n_steps."""
    return np.array(
        [trace_distance(a, b) for a, b in zip(traj1.states, traj2.states)]
    )


def blp_from_distances(
    distances: np.ndarray, pair: tuple[DensityMatrix, DensityMatrix]
) -> BLPResult:
    """Sum of positive trace-distance increments, with the step ranges."""
    inc = np.diff(distances)
    measure = float(np.sum(inc[inc > 0.0]))
    intervals: list[tuple[int, int]] = []
    start = None
    for i, x in enumerate(inc):
        if x > 0.0 and start is None:
            start = i + 1
        elif x <= 0.0 and start is not None:
            intervals.append((start, i))
            start = None
    if start is not None:
        intervals.append((start, len(inc)))
    return BLPResult(
        measure=measure,
        positive_intervals=tuple(intervals),
        pair=pair,
        distances=distances,
    )


def blp_measure(traj1, traj2) -> BLPResult:
    """Degree of non-Markovianity witnessed by one pair of initial states.

    The two trajectories must share configuration, seed and length,
    differing only in the initial system state.
    """
    if traj1.spec.fingerprint() != traj2.spec.fingerprint():
        raise ValueError("trajectories were not produced by the same configuration")
    if (traj1.n_steps, traj1.stream_index) != (traj2.n_steps, traj2.stream_index):
        raise ValueError("trajectories differ in length or stream index")
    pair = (traj1.states[0], traj2.states[0])
    return blp_from_distances(distance_series(traj1, traj2), pair)


def pure_state(theta: float, phi: float) -> DensityMatrix:
    """Qubit pure state at Bloch angles (theta from +z, azimuth phi)."""
    amp0 = math.cos(theta / 2.0)
    amp1 = complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2.0)
    vec = np.array([amp0, amp1], dtype=complex)
    return DensityMatrix(np.outer(vec, vec.conj()), (2,))


def antipodal_pair(theta: float, phi: float) -> tuple[DensityMatrix, DensityMatrix]:
    """Orthogonal pure-state pair at (theta, phi) and its antipode."""
    return pure_state(theta, phi), pure_state(math.pi - theta, phi + math.pi)


def worker_count() -> int:
    cap = os.environ.get("COLLIDEQ_THREADS", "").strip()
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def blp_maximize(
    spec,
    n_steps: int,
    grid: tuple[int, int] = (24, 12),
    tie_atol: float = 1e-9,
) -> tuple[tuple[DensityMatrix, DensityMatrix], BLPResult]:
    """Maximize the backflow measure over antipodal pure pairs on a Bloch grid.

    Orthogonal boundary pairs suffice for the maximization, so the search
    runs over a latitude-longitude grid of ``grid = (azimuthal, polar)``
    pure states paired with their antipodes.  Symmetries of the dynamics
    can make whole families of pairs exactly degenerate, so candidates
    within ``tie_atol`` of the running maximum count as ties and the scan
    order (polar, then azimuthal) picks the first; the result does not
    depend on the worker count.
    """
    from dataclasses import replace as _replace

    from .collider import run_trajectory  # local import to avoid a cycle

    n_az, n_polar = grid
    if n_az < 4 or n_polar < 4:
        raise ValueError("grid resolution must be at least 4 in each direction")

    angles: list[tuple[float, float]] = [(0.0, 0.0)]  # pole pair: (|0>, |1>)
    for j in range(1, n_polar):
        theta = math.pi * j / n_polar
        for k in range(n_az):
            angles.append((theta, 2.0 * math.pi * k / n_az))

    def measure_at(angle: tuple[float, float]) -> float:
        p1, p2 = antipodal_pair(*angle)
        t1 = run_trajectory(_replace(spec, initial=p1), n_steps)
        t2 = run_trajectory(_replace(spec, initial=p2), n_steps)
        return blp_measure(t1, t2).measure

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            measures = list(pool.map(measure_at, angles))
    else:
        measures = [measure_at(a) for a in angles]

    best_idx = 0
    for i, m in enumerate(measures):
        if m > measures[best_idx] + tie_atol:
            best_idx = i
    best_pair = antipodal_pair(*angles[best_idx])
    t1 = run_trajectory(_replace(spec, initial=best_pair[0]), n_steps)
    t2 = run_trajectory(_replace(spec, initial=best_pair[1]), n_steps)
    return best_pair, blp_measure(t1, t2)
