import math

import numpy as np
import pytest

from collideq.collider import EnvSampler, RunSpec, run_trajectory
from collideq.smallmat import DensityMatrix, kron
from collideq.spinmodel import ModelParams, thermal_state
from collideq.thermoprobe import (
    antipodal_pair,
    blp_maximize,
    blp_measure,
    bloch_vector,
    distance_series,
    fidelity,
    landauer_series,
    mutual_information,
    trace_distance,
    von_neumann_entropy,
)

from oracles import jacobi_eigvalsh_pure, random_density, random_pure

LN2 = math.log(2.0)
PLUS, MINUS = antipodal_pair(math.pi / 2, 0.0)
ZERO, ONE = antipodal_pair(0.0, 0.0)
MIXED = DensityMatrix(np.eye(2, dtype=complex) / 2, (2,))


def spec(mode="cell", initial=PLUS, j_ee=0.0, seed=7):
    return RunSpec(
        params=ModelParams(omega_s=3.0, omega_e=1.0, j_se=math.pi / 32, j_ee=j_ee, beta=1.0),
        sampler=EnvSampler(mode="fixed", beta0=1.0, seed=seed),
        initial=initial,
        mode=mode,
    )


def entropy_oracle(mat: np.ndarray) -> float:
    # independent eigensolver (pure-Python Jacobi), direct -sum(p ln p)
    return -sum(x * math.log(x) for x in jacobi_eigvalsh_pure(mat) if x > 1e-12)


class TestEntropy:
    def test_pure_state(self):
        assert von_neumann_entropy(ZERO) == 0.0

    def test_maximally_mixed(self):
        assert abs(von_neumann_entropy(MIXED) - LN2) < 1e-12

    def test_thermal_state_binary_entropy(self):
        # -(p ln p + q ln q) at p = 0.26894142136999516
        got = von_neumann_entropy(thermal_state(1.0, 1.0))
        assert abs(got - 0.5822031088882178) < 1e-12

    def test_matches_independent_eigensolver(self):
        rng = np.random.default_rng(41)
        for n in (2, 4, 8):
            for _ in range(10):
                rho = random_density(rng, n)
                assert abs(von_neumann_entropy(rho) - entropy_oracle(rho)) < 1e-9

    def test_range(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            s = von_neumann_entropy(random_density(rng, 4))
            assert 0.0 <= s <= math.log(4.0)


class TestTraceDistance:
    def test_identical_states(self):
        assert trace_distance(MIXED, MIXED) == 0.0

    def test_orthogonal_pure_states(self):
        assert abs(trace_distance(ZERO, ONE) - 1.0) < 1e-14

    def test_mixed_versus_plus(self):
        # difference has eigenvalues +-1/2
        assert abs(trace_distance(MIXED, PLUS) - 0.5) < 1e-12

    def test_metric_properties(self):
        rng = np.random.default_rng(43)
        for _ in range(25):
            a, b, c = (random_density(rng, 2) for _ in range(3))
            dab, dba = trace_distance(a, b), trace_distance(b, a)
            assert dab == dba
            assert trace_distance(a, c) <= dab + trace_distance(b, c) + 1e-10

    def test_contractive_under_partial_trace(self):
        from collideq.smallmat import partial_trace_array

        rng = np.random.default_rng(44)
        for _ in range(25):
            a, b = random_density(rng, 4), random_density(rng, 4)
            da = trace_distance(
                partial_trace_array(a, (2, 2), (0,)), partial_trace_array(b, (2, 2), (0,))
            )
            assert da <= trace_distance(a, b) + 1e-10

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            trace_distance(MIXED, DensityMatrix(np.eye(4, dtype=complex) / 4, (2, 2)))


class TestFidelity:
    def test_identical_states(self):
        rng = np.random.default_rng(45)
        rho = random_density(rng, 2)
        assert abs(fidelity(rho, rho) - 1.0) < 1e-12

    def test_orthogonal_pure_states(self):
        assert fidelity(ZERO, ONE) < 1e-14

    def test_mixed_versus_zero(self):
        # Tr(rho1 rho2) = 1/2 and the pure state kills the determinant term
        assert abs(fidelity(MIXED, ZERO) - 0.5) < 1e-12

    def test_qubit_closed_form(self):
        rng = np.random.default_rng(46)
        for _ in range(25):
            a, b = random_density(rng, 2), random_density(rng, 2)
            closed = (a @ b).trace().real + 2 * math.sqrt(
                max(0.0, np.linalg.det(a).real * np.linalg.det(b).real)
            )
            assert abs(fidelity(a, b) - closed) < 1e-10

    def test_fuchs_van_de_graaf(self):
        rng = np.random.default_rng(47)
        for _ in range(50):
            a, b = random_density(rng, 2), random_density(rng, 2)
            f, d = fidelity(a, b), trace_distance(a, b)
            assert 1 - math.sqrt(f) <= d + 1e-9
            assert d <= math.sqrt(1 - f) + 1e-9


class TestMutualInformation:
    def test_product_state(self):
        rng = np.random.default_rng(48)
        mi = mutual_information(kron(random_density(rng, 2), random_density(rng, 2)))
        assert mi < 1e-12

    def test_bell_state(self):
        phi = np.zeros(4, dtype=complex)
        phi[0] = phi[3] = 1 / math.sqrt(2)
        assert abs(mutual_information(np.outer(phi, phi.conj())) - 2 * LN2) < 1e-12

    def test_matches_entropy_sum_oracle(self):
        from oracles import ptrace_loops

        rng = np.random.default_rng(49)
        for _ in range(20):
            rho = random_density(rng, 4)
            want = (
                entropy_oracle(ptrace_loops(rho, (2, 2), (0,)))
                + entropy_oracle(ptrace_loops(rho, (2, 2), (1,)))
                - entropy_oracle(rho)
            )
            assert abs(mutual_information(rho) - max(0.0, want)) < 1e-9

    def test_range(self):
        rng = np.random.default_rng(50)
        for _ in range(20):
            mi = mutual_information(random_density(rng, 4))
            assert 0.0 <= mi <= 2 * LN2 + 1e-10

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            mutual_information(MIXED)


class TestBlochVector:
    def test_cardinal_states(self):
        assert np.allclose(bloch_vector(ZERO), (0, 0, 1), atol=1e-14)
        assert np.allclose(bloch_vector(PLUS), (1, 0, 0), atol=1e-14)
        assert np.allclose(bloch_vector(MIXED), (0, 0, 0), atol=1e-14)


class TestLandauerSeries:
    def test_cumulative_is_running_sum_of_gaps(self):
        traj = run_trajectory(spec(j_ee=0.4), 60)
        series = landauer_series(traj, 1.0)
        assert np.abs(series.cumulative - np.cumsum(series.gaps)).max() <= 1e-10

    def test_markov_chain_satisfies_bound(self):
        traj = run_trajectory(spec(mode="markov"), 100)
        series = landauer_series(traj, 1.0)
        assert series.violations == ()
        assert series.gaps.min() >= -1e-10
        assert series.cumulative.min() >= -1e-10

    def test_full_swap_violates_instantaneous_bound(self):
        traj = run_trajectory(spec(j_ee=math.pi / 4), 100)
        series = landauer_series(traj, 1.0)
        assert len(series.violations) > 0
        assert series.gaps.min() < -1e-6
        assert series.cumulative.min() >= -1e-10


class TestBLP:
    def test_identical_initial_states(self):
        t1 = run_trajectory(spec(j_ee=0.4), 50)
        t2 = run_trajectory(spec(j_ee=0.4), 50)
        res = blp_measure(t1, t2)
        assert res.measure == 0.0
        assert res.positive_intervals == ()

    def test_markov_pair_is_zero(self):
        t1 = run_trajectory(spec(initial=PLUS, mode="markov"), 100)
        t2 = run_trajectory(spec(initial=MINUS, mode="markov"), 100)
        res = blp_measure(t1, t2)
        assert res.measure <= 1e-12
        assert res.positive_intervals == ()

    def test_nonzero_for_interacting_environment(self):
        t1 = run_trajectory(spec(initial=PLUS, j_ee=math.pi / 4), 100)
        t2 = run_trajectory(spec(initial=MINUS, j_ee=math.pi / 4), 100)
        assert blp_measure(t1, t2).measure > 0.1

    def test_additive_over_segments(self):
        t1 = run_trajectory(spec(initial=PLUS, j_ee=math.pi / 4), 80)
        t2 = run_trajectory(spec(initial=MINUS, j_ee=math.pi / 4), 80)
        d = distance_series(t1, t2)
        inc = np.diff(d)
        total = float(np.sum(inc[inc > 0]))
        k = 37
        first = np.diff(d[: k + 1])
        second = np.diff(d[k:])
        split = float(np.sum(first[first > 0])) + float(np.sum(second[second > 0]))
        assert abs(total - split) < 1e-12

    def test_rejects_mismatched_configs(self):
        t1 = run_trajectory(spec(j_ee=0.1), 30)
        t2 = run_trajectory(spec(j_ee=0.2), 30)
        with pytest.raises(ValueError):
            blp_measure(t1, t2)
        t3 = run_trajectory(spec(j_ee=0.1), 31)
        with pytest.raises(ValueError):
            blp_measure(t1, t3)

    def test_measure_zero_iff_no_positive_intervals(self):
        rng = np.random.default_rng(51)
        for trial in range(6):
            r1 = DensityMatrix(random_pure(rng), (2,))
            r2 = DensityMatrix(random_pure(rng), (2,))
            t1 = run_trajectory(spec(initial=r1, j_ee=0.5), 40)
            t2 = run_trajectory(spec(initial=r2, j_ee=0.5), 40)
            res = blp_measure(t1, t2)
            assert (res.measure == 0.0) == (res.positive_intervals == ())


class TestBLPMaximize:
    def test_markov_grid_is_flat_zero(self):
        _, res = blp_maximize(spec(mode="cell", j_ee=0.0), 30, grid=(4, 4))
        assert res.measure <= 1e-12

    def test_equatorial_pair_beats_poles(self):
        pair, res = blp_maximize(spec(j_ee=math.pi / 4), 60, grid=(8, 4))
        t1 = run_trajectory(spec(initial=ZERO, j_ee=math.pi / 4), 60)
        t2 = run_trajectory(spec(initial=ONE, j_ee=math.pi / 4), 60)
        pole = blp_measure(t1, t2).measure
        assert res.measure >= pole
        # maximizer sits on the equator: z component of both states is 0
        assert abs(bloch_vector(pair[0])[2]) < 1e-12

    def test_rejects_coarse_grid(self):
        with pytest.raises(ValueError):
            blp_maximize(spec(), 10, grid=(3, 4))
