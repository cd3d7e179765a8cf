import math

import numpy as np
import pytest

from collideq import smallmat
from collideq.smallmat import hermitian_function
from collideq.spinmodel import (
    U_SWAP,
    ModelParams,
    free_evolution,
    free_hamiltonian,
    interaction_hamiltonian,
    local_hamiltonian,
    partial_swap,
    thermal_state,
)

from oracles import random_density, random_pure

# Gibbs populations at beta=1, omega=1: exp(-/+0.5) / (2 cosh 0.5)
P0_BETA1 = 0.26894142136999516
P1_BETA1 = 0.731058578630005


def params(**kw):
    base = dict(omega_s=3.0, omega_e=1.0, j_se=math.pi / 32, j_ee=0.0, beta=1.0)
    base.update(kw)
    return ModelParams(**base)


class TestLocalHamiltonian:
    def test_unit_frequency(self):
        assert np.allclose(local_hamiltonian(1.0), np.diag([0.5, -0.5]), atol=0)

    def test_system_frequency_three(self):
        assert np.allclose(local_hamiltonian(3.0), np.diag([1.5, -1.5]), atol=0)

    def test_traceless(self):
        for omega in (0.1, 1.0, 7.3):
            assert local_hamiltonian(omega).trace() == 0

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            local_hamiltonian(0.0)
        with pytest.raises(ValueError):
            local_hamiltonian(-1.0)


class TestThermalState:
    def test_infinite_temperature(self):
        assert np.abs(thermal_state(0.0, 2.0).mat - np.eye(2) / 2).max() < 1e-15

    def test_direct_gibbs_evaluation(self):
        rho = thermal_state(1.0, 1.0).mat
        assert abs(rho[0, 0].real - P0_BETA1) < 1e-12
        assert abs(rho[1, 1].real - P1_BETA1) < 1e-12

    def test_zero_temperature_limit(self):
        rho = thermal_state(1e3, 1.0).mat
        assert np.abs(rho - np.diag([0.0, 1.0])).max() <= 1e-10

    def test_negative_beta_population_inverted(self):
        rho = thermal_state(-1.0, 1.0).mat
        assert rho[0, 0].real > rho[1, 1].real
        assert abs(rho.trace() - 1) < 1e-14

    def test_commutes_with_hamiltonian(self):
        h = local_hamiltonian(1.7)
        rho = thermal_state(0.8, 1.7).mat
        assert np.abs(h @ rho - rho @ h).max() == 0.0

    def test_rejects_nonfinite_beta(self):
        with pytest.raises(ValueError):
            thermal_state(float("inf"), 1.0)


class TestPartialSwap:
    def test_zero_coupling_is_identity(self):
        assert np.abs(partial_swap(0.0) - np.eye(4)).max() < 1e-15

    def test_full_coupling_swaps_states(self):
        rng = np.random.default_rng(31)
        v = partial_swap(math.pi / 4)
        for _ in range(10):
            ra, rb = random_density(rng, 2), random_density(rng, 2)
            swapped = v @ smallmat.kron(ra, rb) @ v.conj().T
            assert np.abs(swapped - smallmat.kron(rb, ra)).max() < 1e-12

    def test_unitarity_over_sampled_couplings(self):
        for j in np.linspace(0.0, math.pi / 4, 100):
            v = partial_swap(float(j))
            assert np.abs(v.conj().T @ v - np.eye(4)).max() <= 1e-12

    def test_channel_matches_exponentiation_oracle(self):
        # closed form versus spectral exp(-i H_int), compared as channels
        rng = np.random.default_rng(32)
        for j in (0.03, 0.2, math.pi / 8, math.pi / 4):
            v1 = partial_swap(j)
            v2 = hermitian_function(interaction_hamiltonian(j), lambda x: np.exp(-1j * x))
            for _ in range(25):
                rho = random_density(rng, 4)
                a = v1 @ rho @ v1.conj().T
                b = v2 @ rho @ v2.conj().T
                assert np.abs(a - b).max() < 1e-10

    def test_swap_probability(self):
        # |01> goes to |10> with probability sin^2(2j)
        rho = smallmat.kron(np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex))
        for j in (0.1, 0.4, math.pi / 4):
            v = partial_swap(j)
            out = v @ rho @ v.conj().T
            assert abs(out[2, 2].real - math.sin(2 * j) ** 2) < 1e-12

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            partial_swap(-0.1)
        with pytest.raises(ValueError):
            partial_swap(math.pi / 3)


class TestFreeEvolution:
    def test_two_party_diagonal_matches_spectral_oracle(self):
        p = params()
        u = free_evolution(p, 2)
        h0 = free_hamiltonian(p, 2)
        want = hermitian_function(h0, lambda x: np.exp(-1j * x))
        assert np.abs(u - want).max() < 1e-12
        # omega_s=3, omega_e=1: H0 = diag(2, 1, -1, -2)
        assert np.allclose(np.diag(u), np.exp(-1j * np.array([2.0, 1.0, -1.0, -2.0])), atol=1e-14)

    def test_three_party_matches_spectral_oracle(self):
        p = params()
        u = free_evolution(p, 3)
        want = hermitian_function(free_hamiltonian(p, 3), lambda x: np.exp(-1j * x))
        assert np.abs(u - want).max() < 1e-12

    def test_commutes_with_free_hamiltonian(self):
        p = params()
        u, h0 = free_evolution(p, 2), free_hamiltonian(p, 2)
        assert np.abs(u @ h0 - h0 @ u).max() == 0.0

    def test_vanishing_frequencies_give_identity(self):
        p = params(omega_s=1e-12, omega_e=1e-12)
        assert np.abs(free_evolution(p, 3) - np.eye(8)).max() <= 1e-10

    def test_unitary(self):
        u = free_evolution(params(), 3)
        assert np.abs(u.conj().T @ u - np.eye(8)).max() < 1e-14

    def test_rejects_bad_party_count(self):
        with pytest.raises(ValueError):
            free_evolution(params(), 4)


class TestModelInvariants:
    def test_resonance_commutation(self):
        p = params(omega_s=1.0, omega_e=1.0)
        h_int = interaction_hamiltonian(p.j_se)
        h0 = free_hamiltonian(p, 2)
        assert np.abs(h_int @ h0 - h0 @ h_int).max() <= 1e-12

    def test_off_resonance_does_not_commute(self):
        p = params(omega_s=3.0, omega_e=1.0)
        h_int = interaction_hamiltonian(p.j_se)
        h0 = free_hamiltonian(p, 2)
        assert np.abs(h_int @ h0 - h0 @ h_int).max() > 1e-3

    def test_swap_identity(self):
        # heisenberg exchange = 2*SWAP - I on two qubits
        h = interaction_hamiltonian(1.0)
        assert np.abs(h - (2 * U_SWAP - np.eye(4))).max() < 1e-14

    def test_param_validation(self):
        with pytest.raises(ValueError):
            params(omega_s=-1.0)
        with pytest.raises(ValueError):
            params(j_se=1.0)
        with pytest.raises(ValueError):
            params(j_ee=-0.2)
        with pytest.raises(ValueError):
            params(beta=float("nan"))

    def test_pure_state_phase_rotation_invariance(self):
        # conjugating by the closed form and by exp(-iH_int) must agree on kets too
        rng = np.random.default_rng(33)
        j = 0.3
        v1 = partial_swap(j)
        v2 = hermitian_function(interaction_hamiltonian(j), lambda x: np.exp(-1j * x))
        for _ in range(5):
            rho = smallmat.kron(random_pure(rng), random_pure(rng))
            assert np.abs(v1 @ rho @ v1.conj().T - v2 @ rho @ v2.conj().T).max() < 1e-12
