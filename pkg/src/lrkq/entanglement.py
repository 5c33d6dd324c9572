"""Entanglement measures computed from correlation matrices.

Von Neumann entropy comes from the spectrum of W; mutual information and
tripartite mutual information use adjacent equal-size blocks at the start
of the chain.  The log-negativity upper bound expresses the partial
transpose of the Gaussian state as a combination of two Gaussian operators
and evaluates their product norm from the Majorana covariance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .correlators import (
    EIG_CLIP,
    EIG_SLACK,
    CorrelationMatrix,
    CorrelatorTable,
    block_sites,
    build_correlation_matrix,
)
from .errors import (
    NonPhysicalSpectrumError,
    NonRealResultError,
    SingularMatrixError,
    ValidationError,
)

LOGNEG_OFFSET = 0.5 * np.log(2.0)  # additive ln(sqrt 2) of the bound

_COND_LIMIT = 1e12
_HERM_TOL = 1e-8
_IMAG_TOL = 1e-6


@dataclass(frozen=True)
class EntanglementReport:
    """Entropies and derived measures for one adjacent-block geometry."""

    s_a1: float
    s_a2: float
    s_union: float
    mutual_info: float
    tmi: Optional[float]
    logneg_upper: Optional[float]
    block_size: int


@dataclass(frozen=True)
class MajoranaCovariance:
    """Real antisymmetric covariance gamma, site-major Majorana ordering."""

    gamma: np.ndarray

    @property
    def n_sites(self) -> int:
        return self.gamma.shape[0] // 2


def von_neumann_entropy(W: CorrelationMatrix) -> float:
    """S = -1/2 Tr[(I-W) ln(I-W) + W ln W], in nats."""
    nu = np.linalg.eigvalsh(W.W)
    if nu.min() < -EIG_SLACK or nu.max() > 1.0 + EIG_SLACK:
        raise NonPhysicalSpectrumError(
            f"spectrum outside [0,1]: [{nu.min()}, {nu.max()}]"
        )
    nu = np.clip(nu, EIG_CLIP, 1.0 - EIG_CLIP)
    return float(-0.5 * np.sum(nu * np.log(nu) + (1.0 - nu) * np.log(1.0 - nu)))


def entropy_from_majorana(cov: MajoranaCovariance) -> float:
    """Independent entropy path via the spectrum of i*gamma."""
    nu = np.linalg.eigvalsh(1j * cov.gamma)
    p = np.clip((1.0 + nu) / 2.0, EIG_CLIP, 1.0 - EIG_CLIP)
    return float(-np.sum(p * np.log(p)))


def block_entropy(table: CorrelatorTable, sites) -> float:
    return von_neumann_entropy(build_correlation_matrix(table, sites))


def mutual_information(table: CorrelatorTable, L: int) -> float:
    """I(A1:A2) for adjacent blocks A1 = [0..L-1], A2 = [L..2L-1]."""
    if L < 1:
        raise ValidationError("L must be >= 1")
    s1 = block_entropy(table, block_sites(L, 0))
    s2 = block_entropy(table, block_sites(L, L))
    s12 = block_entropy(table, block_sites(2 * L, 0))
    return s1 + s2 - s12


def tripartite_mutual_information(table: CorrelatorTable, L: int) -> float:
    """TMI = I(A1:A2) + I(A1:A3) - I(A1:A2 u A3) for adjacent blocks."""
    a1 = block_sites(L, 0)
    a2 = block_sites(L, L)
    a3 = block_sites(L, 2 * L)
    s = lambda sites: block_entropy(table, sites)
    s1, s2, s3 = s(a1), s(a2), s(a3)
    s12, s13, s23 = s(a1 + a2), s(a1 + a3), s(a2 + a3)
    s123 = s(a1 + a2 + a3)
    # I12 + I13 - I(1:23) expanded in entropies
    return s1 + s2 + s3 - s12 - s13 - s23 + s123


def _omega(m: int) -> np.ndarray:
    """Dirac -> Majorana change of basis, site-major: c_{2j} = f_j + f_j^dag,
    c_{2j+1} = -i(f_j - f_j^dag).  Omega @ Omega^dag = 2I."""
    om = np.zeros((2 * m, 2 * m), dtype=complex)
    for j in range(m):
        om[2 * j, j] = 1.0
        om[2 * j, m + j] = 1.0
        om[2 * j + 1, j] = -1j
        om[2 * j + 1, m + j] = 1j
    return om


def to_majorana(W: CorrelationMatrix) -> MajoranaCovariance:
    """Covariance gamma with <c_p c_q> = delta_pq + i*gamma_pq."""
    m = W.W.shape[0] // 2
    om = _omega(m)
    G = om @ W.W @ om.conj().T
    gamma = (G - np.eye(2 * m)) / 1j
    if np.max(np.abs(gamma.imag)) > 1e-10:
        raise NonRealResultError("Majorana covariance has a large imaginary part")
    gamma = gamma.real
    gamma = 0.5 * (gamma - gamma.T)
    gamma.flags.writeable = False
    return MajoranaCovariance(gamma=gamma)


def from_majorana(cov: MajoranaCovariance, sites=None) -> CorrelationMatrix:
    """Invert to_majorana (exact round trip up to roundoff)."""
    m = cov.n_sites
    om = _omega(m)
    G = np.eye(2 * m) + 1j * cov.gamma
    W = om.conj().T @ G @ om / 4.0
    W = 0.5 * (W + W.conj().T)
    W.flags.writeable = False
    return CorrelationMatrix(W=W, sites=tuple(sites) if sites else tuple(range(m)))


def _psd_sqrt(H: np.ndarray) -> np.ndarray:
    """Principal square root of a (numerically) Hermitian PSD matrix."""
    defect = np.max(np.abs(H - H.conj().T))
    if defect > _HERM_TOL:
        raise NonRealResultError(
            f"matrix expected Hermitian, defect {defect:.3e} > {_HERM_TOL}"
        )
    Hh = 0.5 * (H + H.conj().T)
    evals, vecs = np.linalg.eigh(Hh)
    if evals.min() < -_HERM_TOL:
        raise NonPhysicalSpectrumError(f"negative eigenvalue {evals.min():.3e} in sqrt")
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def logneg_upper_bound_w(W: CorrelationMatrix, L1: int) -> float:
    """Gaussian upper bound xi^u on ln||rho_A^{T2}|| for the split A1|A2,
    where A1 is the first L1 sites of A.

    Works on the Majorana covariance: Gamma_2 flips the sign of A2's
    Majorana modes, the tilde transform multiplies them by i, and the two
    determinants of the Gaussian-operator product are combined with the
    additive ln(sqrt 2).
    """
    m = W.W.shape[0] // 2
    if not 0 < L1 < m:
        raise ValidationError(f"L1 must split the subsystem, got {L1} of {m}")
    gamma = to_majorana(W).gamma
    n = 2 * m
    sign = np.ones(n)
    sign[2 * L1:] = -1.0
    tilde = np.ones(n, dtype=complex)
    tilde[2 * L1:] = 1j

    g1 = gamma
    g2 = sign[:, None] * g1 * sign[None, :]
    gt1 = tilde[:, None] * g1 * tilde[None, :]
    gt2 = tilde[:, None] * g2 * tilde[None, :]

    denom = np.eye(n) - gt1 @ gt2
    if np.linalg.cond(denom) > _COND_LIMIT:
        raise SingularMatrixError("(I - Gt1 Gt2) is numerically singular")
    gx = 1j * (np.eye(n) - (np.eye(n) + 1j * gt2) @ np.linalg.solve(denom, np.eye(n) + 1j * gt1))

    sqrt_sum = _psd_sqrt((np.eye(n) + 1j * gx) / 2.0) + _psd_sqrt((np.eye(n) - 1j * gx) / 2.0)
    sign1, logdet1 = np.linalg.slogdet(sqrt_sum)
    sign2, logdet2 = np.linalg.slogdet(denom / 2.0)
    phase = np.angle(sign1) / 2.0 + np.angle(sign2) / 4.0
    if abs(phase) > _IMAG_TOL:
        raise NonRealResultError(f"negativity bound came out complex (phase {phase:.3e})")
    # Tr(O+ O-)^(1/2) = det1^(1/2) * det2^(1/4): the determinants run over
    # all 2|A| Majorana modes and count every +/- eigenvalue pair twice.
    return float(0.5 * logdet1 + 0.25 * logdet2 + LOGNEG_OFFSET)


def logneg_upper_bound(table: CorrelatorTable, L: int) -> float:
    """xi^u for adjacent equal blocks A1 = [0..L-1], A2 = [L..2L-1]."""
    W = build_correlation_matrix(table, block_sites(2 * L, 0))
    return logneg_upper_bound_w(W, L)


def entanglement_report(table: CorrelatorTable, L: int,
                        with_tmi: bool = False,
                        with_logneg: bool = True) -> EntanglementReport:
    s1 = block_entropy(table, block_sites(L, 0))
    s2 = block_entropy(table, block_sites(L, L))
    s12 = block_entropy(table, block_sites(2 * L, 0))
    return EntanglementReport(
        s_a1=s1,
        s_a2=s2,
        s_union=s12,
        mutual_info=s1 + s2 - s12,
        tmi=tripartite_mutual_information(table, L) if with_tmi else None,
        logneg_upper=logneg_upper_bound(table, L) if with_logneg else None,
        block_size=L,
    )
