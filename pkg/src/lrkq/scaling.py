"""Effective central charges from logarithmic scaling of entanglement.

Block entropy of a critical ground state grows as (c/3) ln of the chord
length; on stationary postquench states mutual information grows as
(c_eff/3) ln L and the negativity bound as (c_eff/4) ln L.  This module
fits those slopes and drives (mu_f, delta_f) phase scans of the fitted
coefficient.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .correlators import (
    block_sites,
    build_correlation_matrix,
    ground_correlators,
    stationary_correlators,
)
from .entanglement import (
    logneg_upper_bound,
    mutual_information,
    tripartite_mutual_information,
    von_neumann_entropy,
)
from .errors import ValidationError
from .model import ModelParams, QuenchProtocol

DEFAULT_L_RANGE = (8, 12, 16, 24, 32, 48, 64)
LOW_CONFIDENCE_R2 = 0.9

MEASURES = ("mi", "negativity", "tmi")

_MEASURE_DIVISOR = {"mi": 3, "negativity": 4, "tmi": 3}
_MEASURE_SITES_PER_L = {"mi": 2, "negativity": 2, "tmi": 3}


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares line through (abscissa(L), value) points.

    c_eff is slope times the divisor (3 for entropy and mutual
    information, 4 for log-negativity).  Fits with r_squared below 0.9
    are flagged low confidence but still returned.
    """

    slope: float
    intercept: float
    r_squared: float
    c_eff: float
    divisor: int
    n_points: int

    @property
    def low_confidence(self) -> bool:
        return self.r_squared < LOW_CONFIDENCE_R2


@dataclass(frozen=True)
class PhaseCell:
    """One (mu_f, delta_f) grid point: a fit, or the error that killed it."""

    mu_f: float
    delta_f: float
    fit: Optional[ScalingFit]
    error: Optional[str]


@dataclass(frozen=True)
class PhaseGrid:
    """Complete scan over a (mu_f, delta_f) grid at fixed alpha and initial state."""

    alpha: float
    initial: ModelParams
    measure: str
    mu_values: Tuple[float, ...]
    delta_values: Tuple[float, ...]
    l_range: Tuple[int, ...]
    cells: Tuple[PhaseCell, ...]  # row-major: mu outer, delta inner

    def cell(self, i_mu: int, i_delta: int) -> PhaseCell:
        return self.cells[i_mu * len(self.delta_values) + i_delta]


def chord_length(L: int, N: int) -> float:
    """Chord length (N/pi) sin(pi L / N) of an L-site arc on an N-site ring."""
    return float(N / np.pi * np.sin(np.pi * L / N))


def fit_log_scaling(points: Sequence[Tuple[int, float]], divisor: int,
                    abscissa: str = "lnL", N: Optional[int] = None) -> ScalingFit:
    """Fit value = slope * x(L) + intercept with x = ln L or ln chord(L, N).

    Needs at least 4 points with distinct increasing L.  The chord
    abscissa (for ground-state entropy on a ring) requires N.
    """
    if len(points) < 4:
        raise ValidationError(f"need >= 4 points for a fit, got {len(points)}")
    if divisor not in (3, 4):
        raise ValidationError(f"divisor must be 3 or 4, got {divisor}")
    Ls = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    if np.any(np.diff(Ls) <= 0):
        raise ValidationError("L values must be distinct and increasing")
    if abscissa == "lnL":
        x = np.log(Ls)
    elif abscissa == "chord":
        if N is None:
            raise ValidationError("chord abscissa requires N")
        x = np.log([chord_length(int(L), N) for L in Ls])
    else:
        raise ValidationError(f"unknown abscissa {abscissa!r}")

    slope, intercept = np.polyfit(x, ys, 1)
    resid = ys - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot < 1e-300 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return ScalingFit(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r2,
        c_eff=float(slope) * divisor,
        divisor=divisor,
        n_points=len(points),
    )


def ground_entropies(p: ModelParams, L_range: Sequence[int] = DEFAULT_L_RANGE):
    """(L, S_vN(L)) pairs for contiguous blocks of the ground state."""
    L_range = tuple(int(L) for L in L_range)
    if max(L_range) >= p.N:
        raise ValidationError(f"max L {max(L_range)} must be < N {p.N}")
    table = ground_correlators(p, max(L_range) - 1)
    return [
        (L, von_neumann_entropy(build_correlation_matrix(table, block_sites(L))))
        for L in L_range
    ]


def ground_c_eff(p: ModelParams, L_range: Sequence[int] = DEFAULT_L_RANGE) -> ScalingFit:
    """Central charge from ground-state block entropy with the chord abscissa."""
    return fit_log_scaling(ground_entropies(p, L_range), divisor=3,
                           abscissa="chord", N=p.N)


def _measure_points(q: QuenchProtocol, measure: str, L_range: Tuple[int, ...]):
    blocks = _MEASURE_SITES_PER_L[measure]
    if blocks * max(L_range) > q.N:
        raise ValidationError(
            f"{measure} needs {blocks}*L <= N; got L={max(L_range)}, N={q.N}"
        )
    table = stationary_correlators(q, blocks * max(L_range) - 1)
    if measure == "mi":
        return [(L, mutual_information(table, L)) for L in L_range]
    if measure == "negativity":
        return [(L, logneg_upper_bound(table, L)) for L in L_range]
    return [(L, tripartite_mutual_information(table, L)) for L in L_range]


def stationary_c_eff(q: QuenchProtocol, measure: str = "mi",
                     L_range: Sequence[int] = DEFAULT_L_RANGE) -> ScalingFit:
    """c_eff of the stationary state from a ln L fit of the chosen measure.

    Adjacent equal blocks at the chain start; divisor 3 for mutual
    information, 4 for the negativity bound.
    """
    if measure not in MEASURES:
        raise ValidationError(f"measure must be one of {MEASURES}, got {measure!r}")
    L_range = tuple(int(L) for L in L_range)
    points = _measure_points(q, measure, L_range)
    return fit_log_scaling(points, divisor=_MEASURE_DIVISOR[measure], abscissa="lnL")


def _scan_cell(args):
    """One phase-scan cell; top level so worker processes can pickle it."""
    initial, alpha, mu_f, delta_f, measure, L_range = args
    try:
        post = ModelParams(N=initial.N, mu=mu_f, delta=delta_f, alpha=alpha)
        fit = stationary_c_eff(QuenchProtocol(initial, post), measure, L_range)
        return PhaseCell(mu_f=mu_f, delta_f=delta_f, fit=fit, error=None)
    except (ValidationError, ArithmeticError) as exc:
        return PhaseCell(mu_f=mu_f, delta_f=delta_f, fit=None,
                         error=f"{type(exc).__name__}: {exc}")


def phase_scan(alpha: float, initial: ModelParams,
               mu_values: Sequence[float], delta_values: Sequence[float],
               measure: str = "mi",
               L_range: Sequence[int] = DEFAULT_L_RANGE,
               workers: Optional[int] = None) -> PhaseGrid:
    """c_eff fits on a (mu_f, delta_f) grid of postquench Hamiltonians.

    Cells are independent and may be computed in a process pool; failures
    are recorded per cell and never abort the scan.  The returned grid is
    ordered row-major (mu outer loop) regardless of execution order.
    """
    if measure not in MEASURES:
        raise ValidationError(f"measure must be one of {MEASURES}, got {measure!r}")
    mu_values = tuple(float(m) for m in mu_values)
    delta_values = tuple(float(d) for d in delta_values)
    if not mu_values or not delta_values:
        raise ValidationError("mu and delta grids must be nonempty")
    L_range = tuple(int(L) for L in L_range)

    tasks = [
        (initial, float(alpha), mu_f, delta_f, measure, L_range)
        for mu_f in mu_values
        for delta_f in delta_values
    ]
    if workers is not None and workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    if workers == 1 or len(tasks) == 1:
        cells = [_scan_cell(t) for t in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_scan_cell, tasks, chunksize=4))
    return PhaseGrid(
        alpha=float(alpha),
        initial=initial,
        measure=measure,
        mu_values=mu_values,
        delta_values=delta_values,
        l_range=L_range,
        cells=tuple(cells),
    )
