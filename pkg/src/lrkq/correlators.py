"""Two-point correlators and subsystem correlation matrices.

All correlators are translation invariant, so they are stored as vectors
over the separation l and the 2|A| x 2|A| matrix W of a site subset A is
assembled from C(m-n), F(m-n).  Momentum sums run over the full
antiperiodic grid; with the grid symmetric under k <-> 2*pi - k both C(l)
and F(l) come out real.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonPhysicalSpectrumError, ValidationError
from .model import ModelParams, QuenchProtocol, mode_data, cos_2dtheta

EIG_CLIP = 1e-12  # eigenvalue clipping for entropy logs
EIG_SLACK = 1e-8  # allowed spectral overshoot before we call W unphysical


@dataclass(frozen=True)
class CorrelatorTable:
    """C(l) = <f_j^dag f_{j+l}> and F(l) = <f_j f_{j+l}> for l = 0..l_max.

    Negative separations follow from C(-l) = conj(C(l)) and F(-l) = -F(l).
    """

    hopping: np.ndarray
    pairing: np.ndarray
    source: str

    @property
    def l_max(self) -> int:
        return len(self.hopping) - 1

    def c(self, l: int) -> complex:
        return complex(self.hopping[l]) if l >= 0 else complex(np.conj(self.hopping[-l]))

    def f(self, l: int) -> complex:
        return complex(self.pairing[l]) if l >= 0 else -complex(self.pairing[-l])


@dataclass(frozen=True)
class CorrelationMatrix:
    """Hermitian block matrix W = [[I - C, F], [F^dag-part, C]] over sites A."""

    W: np.ndarray
    sites: tuple


def _assemble(c_bracket: np.ndarray, f_bracket: np.ndarray, k: np.ndarray,
              N: int, l_max: int, source: str) -> CorrelatorTable:
    """Momentum sums C(l) = (1/2N) sum_k e^{-ikl} c_bracket(k) and
    F(l) = (i/2N) sum_k e^{+ikl} f_bracket(k)."""
    l = np.arange(l_max + 1)
    phase = np.exp(-1j * np.outer(l, k))
    hopping = phase @ c_bracket.astype(complex) / (2.0 * N)
    pairing = 1j * np.conj(phase) @ f_bracket.astype(complex) / (2.0 * N)
    hopping.flags.writeable = False
    pairing.flags.writeable = False
    return CorrelatorTable(hopping=hopping, pairing=pairing, source=source)


def _check_l_max(l_max: int, N: int):
    if not 0 <= l_max <= N - 1:
        raise ValidationError(f"l_max must be in [0, N-1], got {l_max}")


def ground_correlators(p: ModelParams, l_max: int) -> CorrelatorTable:
    """Ground-state correlators (a null quench: cos 2*dtheta = 1)."""
    _check_l_max(l_max, p.N)
    m = mode_data(p)
    c_bracket = 1.0 - m.cos2t
    f_bracket = m.sin2t
    return _assemble(c_bracket, f_bracket, m.k, p.N, l_max, "ground")


def stationary_correlators(q: QuenchProtocol, l_max: int) -> CorrelatorTable:
    """Dephased long-time correlators of the postquench stationary state."""
    _check_l_max(l_max, q.N)
    mf = mode_data(q.post)
    cdt = cos_2dtheta(q)
    c_bracket = 1.0 - mf.cos2t * cdt
    f_bracket = mf.sin2t * cdt
    return _assemble(c_bracket, f_bracket, mf.k, q.N, l_max, "stationary")


def time_correlators(q: QuenchProtocol, t: float, l_max: int) -> CorrelatorTable:
    """Finite-time correlators after the quench (t in units of 1/(2t))."""
    if t < 0:
        raise ValidationError(f"t must be >= 0, got {t}")
    _check_l_max(l_max, q.N)
    mi, mf = mode_data(q.pre), mode_data(q.post)
    cdt = cos_2dtheta(q)
    sdt = mf.sin2t * mi.cos2t - mf.cos2t * mi.sin2t  # sin(2*dtheta)
    cos_lt = np.cos(2.0 * mf.lam * t)
    sin_lt = np.sin(2.0 * mf.lam * t)

    c_bracket = 1.0 - mf.cos2t * cdt - mf.sin2t * sdt * cos_lt
    # F bracket carries a real dephasing part on top of the stationary term:
    # e^{ikl} (-sin(2*lam_f*t) sin(2*dt) + i{sin2t cos(2dt) - cos(2 lam t) sin(2dt) cos2t})
    f_bracket_c = (-sin_lt * sdt).astype(complex) + 1j * (
        mf.sin2t * cdt - cos_lt * sdt * mf.cos2t
    )
    l = np.arange(l_max + 1)
    phase = np.exp(1j * np.outer(l, mi.k))
    pairing = phase @ f_bracket_c / (2.0 * q.N)
    hopping = np.conj(phase) @ c_bracket.astype(complex) / (2.0 * q.N)
    # Match the stationary convention F(l) = i/2N sum e^{ikl} [...]:
    # here the i is already inside f_bracket_c's stationary piece.
    hopping.flags.writeable = False
    pairing.flags.writeable = False
    return CorrelatorTable(hopping=hopping, pairing=pairing, source=f"time {t}")


def build_correlation_matrix(table: CorrelatorTable, sites: Sequence[int]) -> CorrelationMatrix:
    """Assemble W for the (ordered) site subset from the separation table."""
    sites = tuple(int(s) for s in sites)
    m = len(sites)
    if m == 0:
        raise ValidationError("site list must be nonempty")
    sep = np.subtract.outer(sites, sites)  # sep[i, j] = sites[i] - sites[j]
    if np.max(np.abs(sep)) > table.l_max:
        raise ValidationError(
            f"site separation {np.max(np.abs(sep))} exceeds table l_max {table.l_max}"
        )
    # C[i, j] = <f_i^dag f_j> = C(j - i); F[i, j] = <f_i f_j> = F(j - i)
    d = -sep
    cvals = np.where(d >= 0, table.hopping[np.abs(d)], np.conj(table.hopping[np.abs(d)]))
    fvals = np.where(d >= 0, table.pairing[np.abs(d)], -table.pairing[np.abs(d)])
    W = np.zeros((2 * m, 2 * m), dtype=complex)
    W[:m, :m] = np.eye(m) - cvals.T
    W[m:, m:] = cvals
    W[:m, m:] = fvals
    W[m:, :m] = np.conj(fvals).T
    W = 0.5 * (W + W.conj().T)  # kill roundoff asymmetry
    evals = np.linalg.eigvalsh(W)
    if evals.min() < -EIG_SLACK or evals.max() > 1.0 + EIG_SLACK:
        raise NonPhysicalSpectrumError(
            f"W spectrum outside [0,1]: [{evals.min()}, {evals.max()}]"
        )
    W.flags.writeable = False
    return CorrelationMatrix(W=W, sites=sites)


def block_sites(L: int, offset: int = 0) -> tuple:
    """Contiguous block of L sites starting at `offset`."""
    return tuple(range(offset, offset + L))
