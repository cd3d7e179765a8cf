"""Equivalence of the compiled and pure-numpy kernel backends."""

import math

import numpy as np
import pytest

from collideq import backend

from oracles import random_density, random_hermitian

cython_missing = "cython" not in backend.available_backends()
needs_cython = pytest.mark.skipif(cython_missing, reason="compiled extension not built")


@pytest.fixture
def both_backends():
    mods = backend.available_backends()
    yield mods["python"], mods["cython"]


@pytest.fixture(autouse=True)
def restore_backend():
    name = backend.active_name
    yield
    backend.select(name)


@needs_cython
class TestKernelEquivalence:
    def test_kron(self, both_backends):
        py, cy = both_backends
        rng = np.random.default_rng(71)
        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            assert np.abs(py.kron(a, b) - cy.kron(a, b)).max() <= 1e-12

    def test_apply_unitary(self, both_backends):
        py, cy = both_backends
        rng = np.random.default_rng(72)
        for n in (2, 4, 8):
            for _ in range(10):
                h = random_hermitian(rng, n)
                u = py.eigh(h)[1]
                rho = random_density(rng, n)
                assert np.abs(py.apply_unitary(u, rho) - cy.apply_unitary(u, rho)).max() <= 1e-12

    def test_ptrace(self, both_backends):
        py, cy = both_backends
        rng = np.random.default_rng(73)
        cases = [((2, 2), (0,)), ((2, 2), (1,)), ((2, 2, 2), (0, 2)), ((2, 2, 2), (1,))]
        for dims, keep in cases:
            n = int(np.prod(dims))
            for _ in range(10):
                rho = random_density(rng, n)
                assert np.abs(py.ptrace(rho, dims, keep) - cy.ptrace(rho, dims, keep)).max() <= 1e-12

    def test_eigh_same_spectra(self, both_backends):
        py, cy = both_backends
        rng = np.random.default_rng(74)
        for n in (2, 4, 8):
            for _ in range(10):
                h = random_hermitian(rng, n)
                wp = py.eigvalsh(h)
                wc = cy.eigvalsh(h)
                assert np.abs(np.asarray(wp) - np.asarray(wc)).max() <= 1e-10

    def test_eigh_reconstruction_both(self, both_backends):
        rng = np.random.default_rng(75)
        for mod in both_backends:
            for _ in range(10):
                h = random_hermitian(rng, 8)
                w, v = mod.eigh(h)
                assert np.abs((v * w) @ v.conj().T - h).max() <= 1e-10

    def test_eigh_degenerate_spectrum(self, both_backends):
        py, cy = both_backends
        h = np.diag([1.0, 1.0, 2.0, 2.0]).astype(complex)
        assert np.allclose(py.eigvalsh(h), cy.eigvalsh(h), atol=1e-12)


@needs_cython
class TestTrajectoryEquivalence:
    def test_full_run_matches_across_backends(self):
        from collideq.collider import EnvSampler, RunSpec, run_trajectory
        from collideq.spinmodel import ModelParams
        from collideq.thermoprobe import antipodal_pair

        plus, _ = antipodal_pair(math.pi / 2, 0.0)
        spec = RunSpec(
            params=ModelParams(
                omega_s=3.0, omega_e=1.0, j_se=math.pi / 32, j_ee=0.4, beta=1.0
            ),
            sampler=EnvSampler(mode="gaussian", beta0=1.0, sigma_beta=0.1, seed=19),
            initial=plus,
            mode="cell",
        )
        results = {}
        for name in ("python", "cython"):
            backend.select(name)
            traj = run_trajectory(spec, 50)
            results[name] = traj
        for ra, rb in zip(results["python"].records, results["cython"].records):
            assert abs(ra.delta_Q - rb.delta_Q) <= 1e-11
            assert abs(ra.entropy_S - rb.entropy_S) <= 1e-11
            assert abs(ra.mutual_info_pre - rb.mutual_info_pre) <= 1e-10
            assert np.abs(np.array(ra.bloch) - np.array(rb.bloch)).max() <= 1e-11
        for sa, sb in zip(results["python"].states, results["cython"].states):
            assert np.abs(sa.mat - sb.mat).max() <= 1e-11
