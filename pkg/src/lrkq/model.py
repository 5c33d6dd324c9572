"""Momentum-space description of the long-range Kitaev chain.

The chain has nearest-neighbour hopping (2t = 1), chemical potential mu and
p-wave pairing of strength delta decaying with distance as l**(-alpha).
Antiperiodic boundary conditions put the momenta at k_n = 2*pi*(n + 1/2)/N,
so the soft mode k = pi is never sampled exactly for even N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateModeError, ValidationError

_DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class ModelParams:
    """One Hamiltonian instance (N sites, mu, delta, alpha), in units 2t = 1."""

    N: int
    mu: float
    delta: float
    alpha: float

    def __post_init__(self):
        if self.N < 4 or self.N % 2 != 0:
            raise ValidationError(f"N must be an even integer >= 4, got {self.N}")
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise ValidationError(f"alpha must be finite and >= 0, got {self.alpha}")
        if not (math.isfinite(self.mu) and math.isfinite(self.delta)):
            raise ValidationError("mu and delta must be finite")


@dataclass(frozen=True)
class QuenchProtocol:
    """Sudden quench: ground state of `pre` evolved under `post`.

    Both Hamiltonians share the lattice (same N).  Quenching alpha is
    physically untested; the types allow it but the CLI refuses it.
    """

    pre: ModelParams
    post: ModelParams

    def __post_init__(self):
        if self.pre.N != self.post.N:
            raise ValidationError(
                f"pre and post must share N ({self.pre.N} != {self.post.N})"
            )

    @property
    def N(self) -> int:
        return self.pre.N


def momentum_grid(N: int) -> np.ndarray:
    """Antiperiodic momentum grid k_n = 2*pi*(n + 1/2)/N, n = 0..N-1."""
    if N < 4 or N % 2 != 0:
        raise ValidationError(f"N must be an even integer >= 4, got {N}")
    k = 2.0 * np.pi * (np.arange(N) + 0.5) / N
    k.flags.writeable = False
    return k


def g_alpha(k: float, alpha: float, N: int) -> float:
    """Pairing function g_alpha(k) = sum_{l=1}^{N-1} sin(k l) / l**alpha.

    The finite sum is used as-is: it is exact for the simulated chain and
    stays well defined at the Brillouin-zone edge for every alpha >= 0.
    """
    if not 0.0 < k < 2.0 * np.pi:
        raise ValidationError(f"k must lie in (0, 2*pi), got {k}")
    l = np.arange(1, N)
    return float(np.sum(np.sin(k * l) / l**alpha))


def _g_alpha_grid(alpha: float, N: int) -> np.ndarray:
    """g_alpha evaluated on the whole grid via one FFT.

    sin(k_n l) = Im[exp(i*pi*l/N) * exp(2i*pi*n*l/N)], so the grid values
    are the imaginary part of an inverse DFT of w_l = exp(i*pi*l/N)/l**alpha.
    """
    l = np.arange(1, N)
    w = np.zeros(N, dtype=complex)
    w[1:] = np.exp(1j * np.pi * l / N) / l**alpha
    return np.imag(np.fft.ifft(w) * N)


def dispersion(k: float, p: ModelParams) -> float:
    """Quasiparticle energy lambda_alpha(k) >= 0."""
    a = p.mu + np.cos(k)
    b = p.delta * g_alpha(k, p.alpha, p.N)
    return float(np.hypot(a, b))


def bogoliubov_angle(k: float, p: ModelParams) -> float:
    """Bogoliubov angle theta_k diagonalising the 2x2 momentum kernel.

    Branch: theta = atan2(delta*g, -(mu + cos k)) / 2, which makes the
    rotated kernel diag(+lambda, -lambda) and the eta-vacuum the ground
    state.  (The naive atan2(delta*g, mu + cos k) branch diagonalises
    nothing; see tests for the explicit 2x2 conjugation check.)
    """
    a = p.mu + np.cos(k)
    b = p.delta * g_alpha(k, p.alpha, p.N)
    if abs(a) < _DEGENERATE_TOL and abs(b) < _DEGENERATE_TOL:
        raise DegenerateModeError(f"exactly gapless mode at k={k}")
    return 0.5 * math.atan2(b, -a)


@dataclass(frozen=True)
class ModeData:
    """Per-mode grid arrays for one ModelParams (all read-only)."""

    k: np.ndarray
    g: np.ndarray
    a: np.ndarray  # mu + cos k
    lam: np.ndarray
    cos2t: np.ndarray
    sin2t: np.ndarray


@lru_cache(maxsize=128)
def mode_data(p: ModelParams) -> ModeData:
    """Grid momenta, pairing function, dispersion and angle factors for p."""
    k = momentum_grid(p.N)
    g = _g_alpha_grid(p.alpha, p.N)
    a = p.mu + np.cos(k)
    b = p.delta * g
    lam = np.hypot(a, b)
    if np.any(lam < _DEGENERATE_TOL):
        raise DegenerateModeError("exactly gapless mode on the grid")
    cos2t = -a / lam
    sin2t = b / lam
    for arr in (k, g, a, lam, cos2t, sin2t):
        arr.flags.writeable = False
    return ModeData(k=k, g=g, a=a, lam=lam, cos2t=cos2t, sin2t=sin2t)


def cos_2dtheta(q: QuenchProtocol) -> np.ndarray:
    """cos(2*(theta_post - theta_pre)) on the grid, via the angle factors."""
    mi, mf = mode_data(q.pre), mode_data(q.post)
    return mf.cos2t * mi.cos2t + mf.sin2t * mi.sin2t


def occupation_probability(k: float, q: QuenchProtocol) -> float:
    """Stationary occupation n_k of the postquench Bogoliubov mode.

    Closed form n_k = [1 - ((mu_f + cos k)(mu_i + cos k)
    + delta_f*delta_i*g^2) / (lambda_f*lambda_i)] / 2, equivalent to
    (1 - cos 2*dtheta_k)/2.
    """
    pre, post = q.pre, q.post
    a_i = pre.mu + np.cos(k)
    a_f = post.mu + np.cos(k)
    g_i = g_alpha(k, pre.alpha, pre.N)
    g_f = g_alpha(k, post.alpha, post.N)
    lam_i = np.hypot(a_i, pre.delta * g_i)
    lam_f = np.hypot(a_f, post.delta * g_f)
    if lam_i < _DEGENERATE_TOL or lam_f < _DEGENERATE_TOL:
        raise DegenerateModeError(f"gapless mode at k={k}")
    num = a_f * a_i + post.delta * pre.delta * g_f * g_i
    return float(0.5 * (1.0 - num / (lam_f * lam_i)))


def soft_mode_momentum(N: int) -> float:
    """Grid momentum closest to the soft mode k = pi (at distance pi/N)."""
    k = momentum_grid(N)
    return float(k[np.argmin(np.abs(k - np.pi))])
