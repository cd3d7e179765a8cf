#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the primitive kernels on the shapes the dynamics actually uses and
a full 100-step cell trajectory under each backend.

    python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

from collideq import backend
from collideq.collider import EnvSampler, RunSpec, run_trajectory
from collideq.spinmodel import ModelParams
from collideq.thermoprobe import antipodal_pair


def timeit(fn, repeat: int) -> float:
    fn()  # warm up
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def kernel_cases(rng):
    a4 = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    a2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    h8 = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h8 = (h8 + h8.conj().T) / 2
    u8 = np.linalg.eigh(h8)[1]
    rho8 = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    rho8 = rho8 @ rho8.conj().T
    rho8 /= rho8.trace()
    h4 = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h4 = (h4 + h4.conj().T) / 2
    return {
        "kron 4x4 ⊗ 2x2": lambda m: m.kron(a4, a2),
        "conjugate 8x8": lambda m: m.apply_unitary(u8, rho8),
        "ptrace 8->4": lambda m: m.ptrace(rho8, (2, 2, 2), (0, 2)),
        "eigh 4x4": lambda m: m.eigh(h4),
        "eigh 8x8": lambda m: m.eigh(h8),
    }


def trajectory_case():
    plus, _ = antipodal_pair(math.pi / 2, 0.0)
    spec = RunSpec(
        params=ModelParams(omega_s=3.0, omega_e=1.0, j_se=math.pi / 32, j_ee=0.4, beta=1.0),
        sampler=EnvSampler(mode="gaussian", beta0=1.0, sigma_beta=0.1, seed=1),
        initial=plus,
        mode="cell",
    )
    return lambda: run_trajectory(spec, 100)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()

    mods = backend.available_backends()
    if "cython" not in mods:
        print("compiled extension not built; only the python backend is available")

    rng = np.random.default_rng(5)
    cases = kernel_cases(rng)
    names = sorted(mods)
    width = max(len(k) for k in cases) + 2

    print(f"{'kernel':<{width}}" + "".join(f"{n:>14}" for n in names) + f"{'speedup':>10}")
    for label, fn in cases.items():
        per = {n: timeit(lambda m=mods[n]: fn(m), args.repeat) for n in names}
        row = f"{label:<{width}}"
        for n in names:
            row += f"{per[n] * 1e6:>12.2f}us"
        if "cython" in per and per["cython"] > 0:
            row += f"{per['python'] / per['cython']:>9.1f}x"
        print(row)

    print()
    traj = trajectory_case()
    per = {}
    for n in names:
        backend.select(n)
        per[n] = timeit(traj, max(3, args.repeat // 20))
    row = f"{'cell trajectory (100 steps)':<{width}}"
    for n in names:
        row += f"{per[n] * 1e3:>12.2f}ms"
    if "cython" in per:
        row += f"{per['python'] / per['cython']:>9.1f}x"
    print(row)
    backend.select("cython" if "cython" in mods else "python")


if __name__ == "__main__":
    main()
