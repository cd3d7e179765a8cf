"""Command-line entry point.

Subcommands map onto the experiment drivers and write fixed-schema CSV
files into the output directory:

* trajectory.csv   n,delta_U,delta_Q,work,entropy_S,delta_S,landauer_gap,
                   cum_gap,mutual_info,blochx,blochy,blochz
* pairs.csv        n,trace_distance,sigma_n
* sweep.csv        axis,replica,sigma_r,mean_D

plus experiment-specific files (homogenization.csv, synchrony.csv,
area.csv) documented in the README.  Runs are deterministic: the same
config and seed always produce byte-identical files.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from . import expharness, thermoprobe
from .collider import Trajectory, run_trajectory
from .config import RunConfig, load_config
from .csvio import write_csv
from .thermoprobe import landauer_series

TRAJECTORY_COLUMNS = [
    "n", "delta_U", "delta_Q", "work", "entropy_S", "delta_S",
    "landauer_gap", "cum_gap", "mutual_info", "blochx", "blochy", "blochz",
]
PAIRS_COLUMNS = ["n", "trace_distance", "sigma_n"]
SWEEP_COLUMNS = ["axis", "replica", "sigma_r", "mean_D"]

SUBCOMMANDS = ("markov", "cell", "homogenize", "noise-sweep", "jee-sweep", "blp", "synchrony")


def _meta(cfg: RunConfig) -> dict:
    return {"config_hash": cfg.digest(), "seed": cfg.seed}


def _trajectory_rows(traj: Trajectory, beta: float):
    series = landauer_series(traj, beta)
    for rec, cum in zip(traj.records, series.cumulative):
        yield (
            rec.n, rec.delta_U, rec.delta_Q, rec.work, rec.entropy_S,
            rec.delta_S, rec.landauer_gap, cum, rec.mutual_info_pre,
            rec.bloch[0], rec.bloch[1], rec.bloch[2],
        )


def _write_trajectory(path: str, traj: Trajectory, cfg: RunConfig) -> None:
    write_csv(path, TRAJECTORY_COLUMNS, _trajectory_rows(traj, cfg.beta0), _meta(cfg))


def _pairs_rows(distances):
    yield (0, distances[0], 0.0)
    for n in range(1, len(distances)):
        yield (n, distances[n], distances[n] - distances[n - 1])


def _cmd_trajectory(cfg: RunConfig, out: str, mode: str) -> str:
    traj = run_trajectory(cfg.runspec(mode), cfg.n_steps)
    _write_trajectory(os.path.join(out, "trajectory.csv"), traj, cfg)
    series = landauer_series(traj, cfg.beta0)
    b = traj.records[-1].bloch
    return (
        f"{mode}: {cfg.n_steps} steps, final bloch "
        f"({b[0]:.6g}, {b[1]:.6g}, {b[2]:.6g}), "
        f"{len(series.violations)} instantaneous bound violations"
    )


def _cmd_homogenize(cfg: RunConfig, out: str) -> str:
    if cfg.j_ee != 0.0:
        raise ValueError("homogenize requires j_ee = 0")
    result = expharness.homogenization_experiment(cfg.runspec("markov"), cfg.n_steps)
    rows = [
        (n, result.distances[n], result.fidelities[n])
        for n in range(len(result.distances))
    ]
    write_csv(os.path.join(out, "homogenization.csv"),
              ["n", "trace_distance", "fidelity"], rows, _meta(cfg))
    _write_trajectory(os.path.join(out, "trajectory.csv"), result.trajectory, cfg)
    return (
        f"homogenize: D_final={result.distances[-1]:.6g} "
        f"F_final={result.fidelities[-1]:.9g} after {cfg.n_steps} steps"
    )


def _cmd_noise_sweep(cfg: RunConfig, out: str) -> str:
    sweep = expharness.noise_sweep(
        cfg.runspec("markov"),
        list(cfg.sigma_beta_grid),
        cfg.replicas,
        n_steps=cfg.n_steps,
        tail_fraction=cfg.tail_fraction,
    )
    write_csv(os.path.join(out, "sweep.csv"), SWEEP_COLUMNS, sweep.rows, _meta(cfg))
    pts = [(row[0], row[2]) for row in sweep.rows]
    cell = cfg.cell_size if cfg.cell_size > 0 else expharness.auto_cell_size(pts)
    area = expharness.cloud_area(pts, cell)
    summary = f"noise-sweep: {len(sweep.rows)} rows, cloud area {area:.6g}"
    if cfg.omega_s_grid and cfg.omega_e_grid:
        areas = expharness.frequency_area_sweep(
            cfg.runspec("markov"),
            list(cfg.omega_s_grid),
            list(cfg.omega_e_grid),
            list(cfg.sigma_beta_grid),
            cfg.replicas,
            n_steps=cfg.n_steps,
            tail_fraction=cfg.tail_fraction,
        )
        write_csv(os.path.join(out, "area.csv"),
                  ["omega_s", "omega_e", "area"], areas, _meta(cfg))
        summary += f", {len(areas)} frequency points"
    return summary


def _cmd_jee_sweep(cfg: RunConfig, out: str) -> str:
    bundles = expharness.jee_sweep(cfg.runspec("cell"), list(cfg.jee_grid), cfg.n_steps)
    parts = []
    for k, bundle in enumerate(bundles):
        _write_trajectory(os.path.join(out, f"trajectory_jee{k}.csv"), bundle.traj1, cfg)
        write_csv(os.path.join(out, f"pairs_jee{k}.csv"), PAIRS_COLUMNS,
                  _pairs_rows(bundle.distances), _meta(cfg))
        n_viol = int((bundle.gaps < -thermoprobe.VIOLATION_ATOL).sum())
        parts.append(f"j_ee={bundle.j_ee:.6g}: N={bundle.blp.measure:.6g}, {n_viol} violations")
    return "jee-sweep: " + "; ".join(parts)


def _cmd_blp(cfg: RunConfig, out: str) -> str:
    pair, result = thermoprobe.blp_maximize(
        cfg.runspec("cell"), cfg.n_steps, grid=(cfg.blp_azimuthal, cfg.blp_polar)
    )
    write_csv(os.path.join(out, "pairs.csv"), PAIRS_COLUMNS,
              _pairs_rows(result.distances), _meta(cfg))
    b1 = thermoprobe.bloch_vector(pair[0])
    return (
        f"blp: measure={result.measure:.9g} maximizer bloch "
        f"({b1[0]:.4g}, {b1[1]:.4g}, {b1[2]:.4g}) over "
        f"{cfg.blp_azimuthal}x{cfg.blp_polar} grid"
    )


def _cmd_synchrony(cfg: RunConfig, out: str) -> str:
    bundles = expharness.jee_sweep(cfg.runspec("cell"), [cfg.j_ee], cfg.n_steps)
    bundle = bundles[0]
    rows = [
        (n + 1, bundle.sigma[n], bundle.gaps[n], bundle.mutual_info[n], bundle.delta_mi[n])
        for n in range(len(bundle.sigma))
    ]
    write_csv(os.path.join(out, "synchrony.csv"),
              ["n", "sigma_n", "landauer_gap", "mutual_info", "delta_mi"],
              rows, _meta(cfg))
    report = expharness.synchrony_report(bundle)
    if report.degenerate:
        return "synchrony: degenerate (flat trace-distance series), correlations undefined"
    return (
        f"synchrony: corr(sigma,-gap)={report.corr_sigma_neg_gap:.4f} "
        f"corr(sigma,dI)={report.corr_sigma_delta_mi:.4f} "
        f"corr(-gap,dI)={report.corr_neg_gap_delta_mi:.4f} "
        f"co-occurrences={len(report.co_occurrence_steps)}"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collideq",
        description="Collision-model simulator for a spin-1/2 open quantum system.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="path to a key=value config file")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--steps", type=int, help="override the step count")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.steps is not None:
            overrides["n_steps"] = args.steps
        if args.out is not None:
            overrides["output_dir"] = args.out
        if overrides:
            cfg = replace(cfg, **overrides)
        out = cfg.output_dir
        os.makedirs(out, exist_ok=True)

        if args.subcommand in ("markov", "cell"):
            summary = _cmd_trajectory(cfg, out, args.subcommand)
        elif args.subcommand == "homogenize":
            summary = _cmd_homogenize(cfg, out)
        elif args.subcommand == "noise-sweep":
            summary = _cmd_noise_sweep(cfg, out)
        elif args.subcommand == "jee-sweep":
            summary = _cmd_jee_sweep(cfg, out)
        elif args.subcommand == "blp":
            summary = _cmd_blp(cfg, out)
        else:
            summary = _cmd_synchrony(cfg, out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(summary)
    return 0


if __name__ == "__main__":
    sys.exit(main())
