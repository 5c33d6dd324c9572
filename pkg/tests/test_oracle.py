"""Brute-force Fock-space cross-checks of the momentum-space fast paths."""

import numpy as np
import pytest

from lrkq import oracle
from lrkq.correlators import (
    block_sites,
    build_correlation_matrix,
    ground_correlators,
    stationary_correlators,
)
from lrkq.entanglement import von_neumann_entropy
from lrkq.errors import ValidationError
from lrkq.model import ModelParams, QuenchProtocol


class TestGroundEnergy:
    def test_momentum_formula_matches_exact_diagonalization(self):
        for N in (4, 6, 8):
            for alpha in (0.0, 2.0):
                for mu, delta in ((0.5, 1.0), (1.5, -1.0)):
                    p = ModelParams(N, mu, delta, alpha)
                    e_exact, _ = oracle.exact_ground_state(p)
                    assert abs(e_exact - oracle.ground_energy_momentum(p)) < 1e-8

    def test_filled_band_energy(self):
        # delta = 0, mu = 3: every mode occupied, E = -sum (mu + cos k)/2... the
        # momentum formula reduces to -1/2 sum |mu + cos k|
        p = ModelParams(4, 3.0, 0.0, 2.0)
        e_exact, _ = oracle.exact_ground_state(p)
        k = 2 * np.pi * (np.arange(4) + 0.5) / 4
        assert e_exact == pytest.approx(-0.5 * np.sum(np.abs(3.0 + np.cos(k))), abs=1e-10)

    def test_hamiltonian_rejects_large_n(self):
        with pytest.raises(ValidationError):
            oracle.fock_operators(12)


class TestGroundCorrelatorsAgainstExactState(object):
    def test_correlators_match_exact_ground_state(self):
        N = 8
        p = ModelParams(N, 1.0, -1.0, 30.0)
        _, state = oracle.exact_ground_state(p)
        rho = np.outer(state, state.conj())
        C, F = oracle.correlations_of_state(rho, N)
        table = ground_correlators(p, N - 1)
        for i in range(N):
            for j in range(N):
                assert abs(C[i, j] - table.c(j - i)) < 1e-8
                assert abs(F[i, j] - table.f(j - i)) < 1e-8


class TestExactRdm:
    def test_full_system_is_rank_one(self):
        p = ModelParams(6, 0.5, 1.0, 1.0)
        _, state = oracle.exact_ground_state(p)
        rho = oracle.exact_rdm(state, 0, 6, 6)
        evals = np.sort(np.linalg.eigvalsh(rho))
        assert evals[-1] == pytest.approx(1.0, abs=1e-10)
        assert np.max(np.abs(evals[:-1])) < 1e-10

    def test_unit_trace(self):
        rng = np.random.default_rng(43)
        state = rng.normal(size=2**6) + 1j * rng.normal(size=2**6)
        state /= np.linalg.norm(state)
        for start, length in ((0, 2), (1, 3), (2, 4)):
            rho = oracle.exact_rdm(state, start, length, 6)
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
            assert abs(np.trace(rho).imag) < 1e-12

    def test_entropy_matches_correlation_matrix_path(self):
        N = 8
        for mu, delta, alpha in ((1.0, 1.0, 2.0), (0.5, -1.0, 0.0), (1.5, 1.0, 30.0)):
            p = ModelParams(N, mu, delta, alpha)
            _, state = oracle.exact_ground_state(p)
            table = ground_correlators(p, N - 1)
            for L in (2, 3, 4):
                s_exact = oracle.entropy_of_rdm(oracle.exact_rdm(state, 0, L, N))
                s_fast = von_neumann_entropy(
                    build_correlation_matrix(table, block_sites(L))
                )
                assert abs(s_exact - s_fast) < 1e-8

    def test_rejects_oversized_and_offgrid_blocks(self):
        state = np.zeros(2**8)
        state[0] = 1.0
        with pytest.raises(ValidationError):
            oracle.exact_rdm(state, 0, 7, 8)
        with pytest.raises(ValidationError):
            oracle.exact_rdm(state, 6, 4, 8)


class TestGaussianStateReconstruction:
    def test_vacuum_covariance_gives_vacuum_projector(self):
        p = ModelParams(64, -2.0, -1e-10, 2.0)
        table = ground_correlators(p, 10)
        W = build_correlation_matrix(table, block_sites(3))
        rho = oracle.gaussian_state_from_covariance(W)
        assert rho[0, 0].real == pytest.approx(1.0, abs=1e-7)
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-7)

    def test_maximally_mixed(self):
        from lrkq.correlators import CorrelationMatrix

        W = CorrelationMatrix(W=0.5 * np.eye(4, dtype=complex), sites=(0, 1))
        rho = oracle.gaussian_state_from_covariance(W)
        np.testing.assert_allclose(rho, np.eye(4) / 4.0, atol=1e-10)

    def test_reconstruction_reproduces_correlations(self):
        rng = np.random.default_rng(47)
        for _ in range(20):
            pre = ModelParams(8, float(rng.uniform(-2, 2)),
                              float(rng.uniform(0.2, 2) * rng.choice([-1, 1])),
                              float(rng.choice([0.0, 1.0, 2.0])))
            post = ModelParams(8, float(rng.uniform(-2, 2)),
                               float(rng.uniform(0.2, 2) * rng.choice([-1, 1])),
                               pre.alpha)
            q = QuenchProtocol(pre, post)
            table = stationary_correlators(q, 7)
            W = build_correlation_matrix(table, block_sites(4))
            rho = oracle.gaussian_state_from_covariance(W)
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
            C, F = oracle.correlations_of_state(rho, 4)
            m = 4
            assert np.max(np.abs(C - W.W[m:, m:])) < 1e-8
            assert np.max(np.abs(F - W.W[:m, m:])) < 1e-8

    def test_entropy_of_reconstructed_state_matches(self):
        q = QuenchProtocol(
            ModelParams(8, 1.0, -1.0, 1.0), ModelParams(8, 0.5, 1.0, 1.0)
        )
        table = stationary_correlators(q, 7)
        W = build_correlation_matrix(table, block_sites(4))
        rho = oracle.gaussian_state_from_covariance(W)
        assert oracle.entropy_of_rdm(rho) == pytest.approx(
            von_neumann_entropy(W), abs=1e-8
        )

    def test_rejects_large_subsystem(self):
        from lrkq.correlators import CorrelationMatrix

        W = CorrelationMatrix(W=0.5 * np.eye(14, dtype=complex), sites=tuple(range(7)))
        with pytest.raises(ValidationError):
            oracle.gaussian_state_from_covariance(W)


class TestExactLogNegativity:
    def test_product_state_zero(self):
        rho1 = np.diag([0.7, 0.3])
        rho2 = np.diag([0.4, 0.6])
        rho = np.kron(rho1, rho2)
        assert oracle.exact_log_negativity(rho, 2, 2) == pytest.approx(0.0, abs=1e-12)

    def test_bell_pair_ln2(self):
        psi = np.zeros(4)
        psi[0] = psi[3] = 1 / np.sqrt(2)
        rho = np.outer(psi, psi)
        assert oracle.exact_log_negativity(rho, 2, 2) == pytest.approx(
            np.log(2.0), abs=1e-12
        )

    def test_shape_validation(self):
        with pytest.raises(ValidationError):
            oracle.exact_log_negativity(np.eye(4) / 4, 2, 4)
