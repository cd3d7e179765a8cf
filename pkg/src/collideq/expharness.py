"""Figure-level experiment drivers.

Each driver runs trajectories through the collider and reduces them to
the series plotted in the study: homogenization distance/fidelity
curves, asymptotic Bloch-vector fluctuations under preparation noise,
occupancy-grid cloud areas, inter-environment coupling sweeps and the
synchrony statistics.  Sweep points fan out to a thread pool capped by
COLLIDEQ_THREADS; results are keyed by index, so parallel and serial
execution produce identical output.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from statistics import NormalDist

import numpy as np

from . import thermoprobe
from .collider import EnvSampler, RunSpec, Trajectory, run_trajectory
from .smallmat import DensityMatrix
from .spinmodel import thermal_state
from .thermoprobe import BLPResult, blp_from_distances, landauer_series, worker_count

#: Quadrature nodes for the noise-averaged environment state.
ENV_AVERAGE_NODES = 1000


def average_env_state(sampler: EnvSampler, omega_e: float) -> DensityMatrix:
    """Mean preparation state of the environment particles.

    For a fixed sampler this is the Gibbs state at beta0.  For Gaussian
    preparations the state is averaged by quantile quadrature over the
    beta distribution (truncated to beta > 0 when the sampler resamples
    non-positive draws).
    """
    if sampler.mode == "fixed" or sampler.sigma_beta == 0.0:
        return thermal_state(sampler.beta0, omega_e)
    nd = NormalDist(mu=sampler.beta0, sigma=sampler.sigma_beta)
    lo = 0.0
    if sampler.truncation == "resample-positive":
        lo = nd.cdf(0.0)
    acc = np.zeros((2, 2), dtype=complex)
    for k in range(ENV_AVERAGE_NODES):
        p = lo + (1.0 - lo) * (k + 0.5) / ENV_AVERAGE_NODES
        acc += thermal_state(nd.inv_cdf(p), omega_e).mat
    return DensityMatrix.from_computed(acc / ENV_AVERAGE_NODES, (2,))


@dataclass(frozen=True)
class HomogenizationResult:
    trajectory: Trajectory
    env_average: DensityMatrix
    distances: np.ndarray  # D(rho_S_n, env_average), n = 0..n_steps
    fidelities: np.ndarray


def homogenization_experiment(spec: RunSpec, n_steps: int) -> HomogenizationResult:
    """Distance and fidelity to the mean environment state along a run.

    Requires j_ee = 0 (memoryless chain); runs the markov engine.
    """
    if spec.params.j_ee != 0.0:
        raise ValueError("homogenization experiment requires j_ee = 0")
    traj = run_trajectory(replace(spec, mode="markov"), n_steps)
    target = average_env_state(spec.sampler, spec.params.omega_e)
    d = np.array([thermoprobe.trace_distance(s, target) for s in traj.states])
    f = np.array([thermoprobe.fidelity(s, target) for s in traj.states])
    return HomogenizationResult(traj, target, d, f)


def asymptotic_fluctuation(traj: Trajectory, tail_fraction: float = 0.5) -> float:
    """Root total variance of the Bloch vector over the trajectory tail.

    sigma_r = sqrt(Var(r_x) + Var(r_y) + Var(r_z)) computed over the last
    ``tail_fraction`` of the recorded steps (at least 20 samples).
    """
    if not 0.0 < tail_fraction <= 1.0:
        raise ValueError("tail_fraction must lie in (0, 1]")
    m = int(len(traj.records) * tail_fraction)
    if m < 20:
        raise ValueError(
            f"tail window has {m} samples; need at least 20 "
            f"(trajectory length {len(traj.records)}, tail_fraction {tail_fraction})"
        )
    tail = np.array([r.bloch for r in traj.records[-m:]])
    return float(np.sqrt(tail.var(axis=0, ddof=0).sum()))


@dataclass(frozen=True)
class SweepResult:
    """One row per (axis value, replica): reproducible from (spec, seed)."""

    axis_name: str
    rows: tuple[tuple[float, int, float, float], ...]  # (axis, replica, sigma_r, mean_D)
    n_steps: int
    tail_fraction: float
    master_seed: int


def noise_sweep(
    spec: RunSpec,
    sigma_beta_grid: list[float],
    m_replicas: int,
    n_steps: int = 600,
    tail_fraction: float = 0.5,
) -> SweepResult:
    """Asymptotic fluctuations against environment preparation noise.

    For each sigma_beta, M independent replicas (sampler streams
    seed ^ replica) record sigma_r and the tail-averaged distance to the
    noise-averaged environment state.
    """
    if not sigma_beta_grid:
        raise ValueError("sigma_beta_grid must be nonempty")
    if m_replicas < 1:
        raise ValueError("need at least one replica")

    jobs = [(sb, rep) for sb in sigma_beta_grid for rep in range(m_replicas)]

    def one(job: tuple[float, int]) -> tuple[float, int, float, float]:
        sb, rep = job
        sampler = replace(
            spec.sampler, mode="fixed" if sb == 0.0 else "gaussian", sigma_beta=sb
        )
        s = replace(spec, sampler=sampler, mode="markov")
        traj = run_trajectory(s, n_steps, stream_index=rep)
        sigma_r = asymptotic_fluctuation(traj, tail_fraction)
        target = average_env_state(sampler, spec.params.omega_e)
        m = int(len(traj.records) * tail_fraction)
        mean_d = float(
            np.mean([thermoprobe.trace_distance(st, target) for st in traj.states[-m:]])
        )
        return (sb, rep, sigma_r, mean_d)

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(one, jobs))
    else:
        rows = tuple(one(j) for j in jobs)
    return SweepResult(
        axis_name="sigma_beta",
        rows=rows,
        n_steps=n_steps,
        tail_fraction=tail_fraction,
        master_seed=spec.sampler.seed,
    )


def cloud_area(points, cell_size: float) -> float:
    """Occupancy-grid estimate of the area covered by a 2-D point cloud.

    Cells are anchored at the origin (index = floor(coord / cell_size)),
    so the estimate is permutation-invariant and can only grow when
    points are added.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two (x, y) points")
    if not cell_size > 0:
        raise ValueError("cell_size must be positive")
    cells = {(math.floor(x / cell_size), math.floor(y / cell_size)) for x, y in pts}
    return len(cells) * cell_size * cell_size


def auto_cell_size(points) -> float:
    """Default occupancy cell: bounding-box diagonal / 50."""
    pts = np.asarray(points, dtype=float)
    span = pts.max(axis=0) - pts.min(axis=0)
    diag = float(np.hypot(span[0], span[1]))
    return diag / 50.0 if diag > 0 else 1.0


@dataclass(frozen=True)
class JeeBundle:
    """All series of one inter-environment coupling value."""

    j_ee: float
    distances: np.ndarray  # D(rho1_n, rho2_n), n = 0..n_steps
    sigma: np.ndarray  # trace-distance increments, one per step
    gaps: np.ndarray  # instantaneous bound gaps g_n of the first trajectory
    cumulative_gaps: np.ndarray
    mutual_info: np.ndarray  # pre-collision system-environment correlations I_n
    delta_mi: np.ndarray  # increments of I_n (I_0 = 0)
    blp: BLPResult
    traj1: Trajectory
    traj2: Trajectory


def jee_sweep(
    spec: RunSpec,
    jee_values: list[float],
    n_steps: int = 100,
    pair: tuple[DensityMatrix, DensityMatrix] | None = None,
) -> list[JeeBundle]:
    """Run an initial-state pair across inter-environment couplings.

    All couplings see identical environment realizations (same sampler
    stream).  Default pair: |+> and |->, the backflow-maximizing choice.
    """
    if pair is None:
        pair = thermoprobe.antipodal_pair(math.pi / 2.0, 0.0)
    bundles = []
    for jee in jee_values:
        params = replace(spec.params, j_ee=jee)
        s1 = replace(spec, params=params, mode="cell", initial=pair[0])
        s2 = replace(spec, params=params, mode="cell", initial=pair[1])
        t1 = run_trajectory(s1, n_steps)
        t2 = run_trajectory(s2, n_steps)
        d = thermoprobe.distance_series(t1, t2)
        ls = landauer_series(t1, spec.params.beta)
        mi = np.array([r.mutual_info_pre for r in t1.records])
        bundles.append(
            JeeBundle(
                j_ee=jee,
                distances=d,
                sigma=np.diff(d),
                gaps=ls.gaps,
                cumulative_gaps=ls.cumulative,
                mutual_info=mi,
                delta_mi=np.diff(np.concatenate([[0.0], mi])),
                blp=blp_from_distances(d, pair),
                traj1=t1,
                traj2=t2,
            )
        )
    return bundles


@dataclass(frozen=True)
class SynchronyReport:
    """Correlation statistics between backflow, bound gaps and correlations."""

    degenerate: bool  # a flat input series makes the correlations undefined
    corr_sigma_delta_mi: float | None
    corr_neg_gap_delta_mi: float | None
    corr_sigma_neg_gap: float | None
    co_occurrence_steps: tuple[int, ...]  # sigma>0, gap<0 and dI<0 together


def _pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    sx, sy = float(np.std(x)), float(np.std(y))
    if sx == 0.0 or sy == 0.0:
        return None
    return float(np.corrcoef(x, y)[0, 1])


def synchrony_report(bundle: JeeBundle) -> SynchronyReport:
    """Pearson correlations among sigma_n, -g_n and delta-I_n plus their
    co-occurrence steps.

    A memoryless run never builds correlations, so its delta-I series is
    identically zero (and sigma carries no backflow); such bundles are
    flagged degenerate instead of producing NaN correlations.
    """
    sig, gaps, dmi = bundle.sigma, bundle.gaps, bundle.delta_mi
    degenerate = bool(np.abs(dmi).max() <= 1e-12 or np.abs(sig).max() <= 1e-12)
    co = tuple(
        int(i + 1)
        for i in range(len(sig))
        if sig[i] > 0.0 and gaps[i] < 0.0 and dmi[i] < 0.0
    )
    if degenerate:
        return SynchronyReport(True, None, None, None, co)
    return SynchronyReport(
        degenerate=False,
        corr_sigma_delta_mi=_pearson(sig, dmi),
        corr_neg_gap_delta_mi=_pearson(-gaps, dmi),
        corr_sigma_neg_gap=_pearson(sig, -gaps),
        co_occurrence_steps=co,
    )


def frequency_area_sweep(
    spec: RunSpec,
    omega_s_grid: list[float],
    omega_e_grid: list[float],
    sigma_beta_grid: list[float],
    m_replicas: int,
    n_steps: int = 600,
    tail_fraction: float = 0.5,
) -> list[tuple[float, float, float]]:
    """Cloud area of the (sigma_beta, sigma_r) scatter per frequency pair.

    One occupancy-grid area (auto cell size) per (omega_s, omega_e),
    quantifying how the fluctuation spread depends on the level spacings.
    """
    out = []
    for ws in omega_s_grid:
        for we in omega_e_grid:
            params = replace(spec.params, omega_s=ws, omega_e=we)
            sweep = noise_sweep(
                replace(spec, params=params),
                sigma_beta_grid,
                m_replicas,
                n_steps,
                tail_fraction,
            )
            pts = [(row[0], row[2]) for row in sweep.rows]
            out.append((ws, we, cloud_area(pts, auto_cell_size(pts))))
    return out
