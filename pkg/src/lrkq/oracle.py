"""Brute-force Fock-space references for small chains (N <= 10).

Everything here is validation apparatus: exact ground states of the full
2^N Hamiltonian, explicit Gaussian density matrices reconstructed from
correlation matrices, exact entropies and exact log-negativity via the
plain matrix partial transpose in the occupation basis.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .correlators import CorrelationMatrix
from .entanglement import MajoranaCovariance, to_majorana
from .errors import NonPhysicalSpectrumError, ValidationError
from .model import ModelParams, mode_data

_MAX_N = 10
_MAX_SUBSYSTEM = 6

_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
_F = np.array([[0.0, 1.0], [0.0, 0.0]])  # annihilation in basis (|0>, |1>)


@lru_cache(maxsize=16)
def fock_operators(N: int):
    """Sparse annihilation operators f_1..f_N with Jordan-Wigner strings."""
    if N > _MAX_N:
        raise ValidationError(f"Fock-space oracle limited to N <= {_MAX_N}")
    ops = []
    for j in range(N):
        mats = [_SZ] * j + [_F] + [np.eye(2)] * (N - j - 1)
        op = sp.csr_matrix(mats[0])
        for m in mats[1:]:
            op = sp.kron(op, sp.csr_matrix(m), format="csr")
        ops.append(op)
    return tuple(ops)


def fock_hamiltonian(p: ModelParams) -> np.ndarray:
    """Dense 2^N x 2^N Hamiltonian with antiperiodic boundary wrap.

    Every operator index crossing the boundary picks up a minus sign,
    matching the antiperiodic momentum grid.
    """
    N = p.N
    f = fock_operators(N)
    t = 0.5  # 2t = 1
    dim = 2**N
    H = sp.csr_matrix((dim, dim))

    def site(idx):
        # returns (operator index, boundary sign)
        return idx % N, -1.0 if idx >= N else 1.0

    for j in range(N):
        j1, s1 = site(j + 1)
        hop = f[j].conj().T @ f[j1]
        H = H - t * s1 * (hop + hop.conj().T)
        H = H - p.mu * (f[j].conj().T @ f[j] - 0.5 * sp.identity(dim))
        for l in range(1, N):
            jl, sl = site(j + l)
            pair = f[jl].conj().T @ f[j].conj().T
            # f_{j+l}^dag f_j^dag - f_{j+l} f_j = pair + pair^dag
            # (the second product reorders to -pair^dag)
            H = H + (p.delta / 2.0) * l ** (-p.alpha) * sl * (pair + pair.conj().T)
    Hd = H.toarray()
    herm_defect = np.max(np.abs(Hd - Hd.conj().T))
    if herm_defect > 1e-10:
        raise NonPhysicalSpectrumError(f"Fock Hamiltonian not Hermitian ({herm_defect:.3e})")
    return Hd.real


def exact_ground_state(p: ModelParams) -> tuple:
    """(energy, state vector) of the minimal eigenvalue of the Fock Hamiltonian."""
    H = fock_hamiltonian(p)
    evals, evecs = np.linalg.eigh(H)
    return float(evals[0]), evecs[:, 0]


def ground_energy_momentum(p: ModelParams) -> float:
    """Ground energy -1/2 sum_k lambda(k) from the momentum-space formula."""
    return float(-0.5 * np.sum(mode_data(p).lam))


def exact_rdm(state: np.ndarray, start: int, length: int, N: int) -> np.ndarray:
    """Reduced density matrix of the contiguous block [start, start+length)."""
    if length > _MAX_SUBSYSTEM:
        raise ValidationError(f"oracle subsystems limited to {_MAX_SUBSYSTEM} sites")
    if start < 0 or start + length > N:
        raise ValidationError("block must be contiguous and inside the chain")
    before, after = 2**start, 2 ** (N - start - length)
    psi = state.reshape(before, 2**length, after)
    return np.einsum("amb,anb->mn", psi, psi.conj())


def entropy_of_rdm(rho: np.ndarray) -> float:
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-14]
    return float(-np.sum(evals * np.log(evals)))


def _canonical_modes(gamma: np.ndarray):
    """Real Schur form of the covariance: gamma = Z T Z^T with det Z = +1.

    Returns (Z, nus) where nus[j] pairs Majoranas (2j, 2j+1) with canonical
    block [[0, nu], [-nu, 0]]; occupation p = (1 - nu)/2.
    """
    T, Z = scipy.linalg.schur(gamma, output="real")
    n = gamma.shape[0]
    nus = np.zeros(n // 2)
    for j in range(n // 2):
        nus[j] = T[2 * j, 2 * j + 1]
    if np.linalg.det(Z) < 0:
        Z = Z.copy()
        Z[:, -1] *= -1.0
        nus[-1] *= -1.0
    return Z, nus


def _so_log(Z: np.ndarray) -> np.ndarray:
    """Real antisymmetric logarithm of a special orthogonal matrix.

    scipy's logm goes complex near eigenvalue -1; the real Schur form of Z
    is block diagonal with plane rotations and +/-1 entries, so the log can
    be assembled directly (pairing the -1 entries into pi-rotations).
    """
    T, Q = scipy.linalg.schur(Z, output="real")
    n = Z.shape[0]
    logT = np.zeros((n, n))
    minus_ones = []
    i = 0
    while i < n:
        if i + 1 < n and abs(T[i + 1, i]) > 1e-12:
            theta = np.arctan2(T[i + 1, i], T[i, i])
            logT[i, i + 1] = -theta
            logT[i + 1, i] = theta
            i += 2
        else:
            if T[i, i] < 0:
                minus_ones.append(i)
            i += 1
    if len(minus_ones) % 2 != 0:
        raise NonPhysicalSpectrumError("rotation has det -1; cannot take a real log")
    for a, b in zip(minus_ones[::2], minus_ones[1::2]):
        logT[a, b] = -np.pi
        logT[b, a] = np.pi
    h = Q @ logT @ Q.T
    return 0.5 * (h - h.T)


def gaussian_state_from_covariance(W: CorrelationMatrix) -> np.ndarray:
    """Explicit 2^m density matrix with the two-point functions of W.

    Brings the Majorana covariance to canonical form with a real orthogonal
    rotation, builds the product-of-modes state from the canonical
    occupations and rotates back with the Fock-space representation of the
    orthogonal transformation.
    """
    m = W.W.shape[0] // 2
    if m > _MAX_SUBSYSTEM:
        raise ValidationError(f"explicit Gaussian states limited to {_MAX_SUBSYSTEM} sites")
    gamma = to_majorana(W).gamma
    Z, nus = _canonical_modes(gamma)
    if np.max(np.abs(nus)) > 1.0 + 1e-8:
        raise NonPhysicalSpectrumError(f"canonical value {np.max(np.abs(nus))} > 1")
    nus = np.clip(nus, -1.0, 1.0)
    occ = (1.0 - nus) / 2.0

    rho = np.array([[1.0]])
    for p_j in occ:
        rho = np.kron(rho, np.diag([1.0 - p_j, p_j]))

    h = _so_log(Z)
    c = majorana_operators(m)
    K = sp.csr_matrix((2**m, 2**m), dtype=complex)
    for pidx in range(2 * m):
        for qidx in range(2 * m):
            if h[pidx, qidx] != 0.0:
                K = K + 0.25 * h[pidx, qidx] * (c[pidx] @ c[qidx])
    U = scipy.linalg.expm(K.toarray())
    return U @ rho.astype(complex) @ U.conj().T


@lru_cache(maxsize=16)
def majorana_operators(m: int):
    """Dense Majorana matrices c_0..c_{2m-1}, site-major ordering."""
    f = fock_operators(m)
    ops = []
    for j in range(m):
        fj = f[j].toarray()
        ops.append(fj + fj.conj().T)
        ops.append(-1j * (fj - fj.conj().T))
    return tuple(sp.csr_matrix(o) for o in ops)


def correlations_of_state(rho: np.ndarray, m: int):
    """(C, F) blocks <f_i^dag f_j>, <f_i f_j> recomputed from an explicit state."""
    f = [op.toarray() for op in fock_operators(m)]
    C = np.zeros((m, m), dtype=complex)
    F = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            C[i, j] = np.trace(rho @ f[i].conj().T @ f[j])
            F[i, j] = np.trace(rho @ f[i] @ f[j])
    return C, F


def exact_log_negativity(rho: np.ndarray, dim1: int, dim2: int) -> float:
    """ln of the trace norm of the partial transpose over the second factor."""
    if rho.shape != (dim1 * dim2, dim1 * dim2):
        raise ValidationError("density matrix shape does not match the split")
    r = rho.reshape(dim1, dim2, dim1, dim2)
    rt = np.transpose(r, (0, 3, 2, 1)).reshape(dim1 * dim2, dim1 * dim2)
    evals = np.linalg.eigvalsh(0.5 * (rt + rt.conj().T))
    return float(np.log(np.sum(np.abs(evals))))
