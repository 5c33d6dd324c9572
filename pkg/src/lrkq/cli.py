"""Command-line front end: sweeps, phase scans, fits and oracle checks.

Every run writes one CSV (RFC 4180, UTF-8, CRLF, '.' decimal, 17
significant digits) whose first lines are '#'-commented key=value pairs
echoing the fully resolved configuration, so a result file is always
reproducible from its own header.

Exit codes: 0 ok, 2 configuration error, 3 numerical failure,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .correlators import block_sites, build_correlation_matrix, stationary_correlators
from .entanglement import (
    logneg_upper_bound,
    logneg_upper_bound_w,
    mutual_information,
    tripartite_mutual_information,
    von_neumann_entropy,
)
from .errors import OracleMismatchError, ValidationError
from .model import (
    ModelParams,
    QuenchProtocol,
    occupation_probability,
    soft_mode_momentum,
)
from .scaling import (
    DEFAULT_L_RANGE,
    MEASURES,
    fit_log_scaling,
    ground_entropies,
    phase_scan,
    stationary_c_eff,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_ORACLE = 4

_SWEEP_N = 1000
_FIT_N = 2000
_SWEEP_L = 50


def _fmt(x) -> str:
    """17 significant digits for floats, plain str otherwise."""
    if isinstance(x, float) or isinstance(x, np.floating):
        return format(float(x), ".17g")
    return str(x)


def _parse_grid(spec: str) -> list:
    """Parse 'lo:hi:steps' into an inclusive linear grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must be lo:hi:steps, got {spec!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ValidationError(f"bad grid {spec!r}: {exc}") from None
    if steps < 1:
        raise ValidationError(f"grid needs >= 1 step, got {steps}")
    if steps == 1:
        return [lo]
    return [float(v) for v in np.linspace(lo, hi, steps)]


def _parse_l_range(spec: str) -> tuple:
    try:
        Ls = tuple(int(s) for s in spec.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad L range {spec!r}: {exc}") from None
    if not Ls or any(L < 1 for L in Ls):
        raise ValidationError(f"L range must be positive integers, got {spec!r}")
    return Ls


class _CsvSink:
    """Buffers commented header lines plus CSV rows, then writes atomically."""

    def __init__(self, config: dict):
        self._buf = io.StringIO(newline="")
        self._writer = csv.writer(self._buf, lineterminator="\r\n")
        self._buf.write(f"# lrkq {__version__}\r\n")
        for key in sorted(config):
            self._buf.write(f"# {key}={_fmt(config[key])}\r\n")

    def row(self, values):
        self._writer.writerow([_fmt(v) for v in values])

    def flush(self, out: Optional[str]):
        text = self._buf.getvalue()
        if out is None:
            sys.stdout.write(text)
        else:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)


def _workers(args) -> Optional[int]:
    if args.workers is not None:
        return args.workers
    env = os.environ.get("LRK_WORKERS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"LRK_WORKERS must be an integer, got {env!r}")
    return None


def run_ground(args) -> int:
    N = args.n if args.n is not None else _FIT_N
    l_range = _parse_l_range(args.l_range) if args.l_range else DEFAULT_L_RANGE
    p = ModelParams(N=N, mu=args.mu_i, delta=args.delta_i, alpha=args.alpha)
    points = ground_entropies(p, l_range)
    fit = fit_log_scaling(points, divisor=3, abscissa="chord", N=N)

    sink = _CsvSink({
        "subcommand": "ground", "n": N, "alpha": p.alpha, "mu": p.mu,
        "delta": p.delta, "l_range": ",".join(map(str, l_range)),
        "abscissa": "chord",
    })
    sink.row(["kind", "L", "entropy", "c_eff", "r_squared", "flag"])
    for L, s in points:
        sink.row(["point", L, s, "", "", ""])
    sink.row(["fit", "", "", fit.c_eff, fit.r_squared,
              "low_confidence" if fit.low_confidence else ""])
    sink.flush(args.out)
    return EXIT_OK


def run_quench_sweep(args) -> int:
    N = args.n if args.n is not None else _SWEEP_N
    L = _parse_l_range(args.l_range)[0] if args.l_range else _SWEEP_L
    mu_values = _parse_grid(args.mu_grid) if args.mu_grid else [args.mu_f]
    if 3 * L > N:
        raise ValidationError(f"sweep needs 3*L <= N, got L={L}, N={N}")
    pre = ModelParams(N=N, mu=args.mu_i, delta=args.delta_i, alpha=args.alpha)
    k_soft = soft_mode_momentum(N)

    sink = _CsvSink({
        "subcommand": "quench-sweep", "n": N, "alpha": args.alpha,
        "mu_i": args.mu_i, "delta_i": args.delta_i, "delta_f": args.delta_f,
        "mu_grid": args.mu_grid or str(args.mu_f), "l": L,
    })
    sink.row(["mu_f", "mutual_info", "logneg_upper", "tmi", "n_soft_mode"])
    for mu_f in mu_values:
        post = ModelParams(N=N, mu=float(mu_f), delta=args.delta_f, alpha=args.alpha)
        q = QuenchProtocol(pre, post)
        table = stationary_correlators(q, 3 * L - 1)
        sink.row([
            float(mu_f),
            mutual_information(table, L),
            logneg_upper_bound(table, L),
            tripartite_mutual_information(table, L),
            occupation_probability(k_soft, q),
        ])
    sink.flush(args.out)
    return EXIT_OK


def run_phase_plot(args) -> int:
    N = args.n if args.n is not None else _FIT_N
    l_range = _parse_l_range(args.l_range) if args.l_range else DEFAULT_L_RANGE
    mu_values = _parse_grid(args.mu_grid) if args.mu_grid else _parse_grid("0:2:21")
    delta_values = _parse_grid(args.delta_grid) if args.delta_grid else _parse_grid("-2:2:21")
    initial = ModelParams(N=N, mu=args.mu_i, delta=args.delta_i, alpha=args.alpha)
    grid = phase_scan(args.alpha, initial, mu_values, delta_values,
                      measure=args.measure, L_range=l_range,
                      workers=_workers(args))

    sink = _CsvSink({
        "subcommand": "phase-plot", "n": N, "alpha": args.alpha,
        "mu_i": args.mu_i, "delta_i": args.delta_i,
        "mu_grid": args.mu_grid or "0:2:21",
        "delta_grid": args.delta_grid or "-2:2:21",
        "measure": args.measure, "l_range": ",".join(map(str, l_range)),
    })
    sink.row(["alpha", "mu_i", "delta_i", "mu_f", "delta_f",
              "measure", "c_eff", "r_squared", "flag"])
    for cell in grid.cells:
        if cell.fit is None:
            sink.row([args.alpha, args.mu_i, args.delta_i, cell.mu_f,
                      cell.delta_f, args.measure, "", "", f"error:{cell.error}"])
        else:
            sink.row([args.alpha, args.mu_i, args.delta_i, cell.mu_f,
                      cell.delta_f, args.measure, cell.fit.c_eff,
                      cell.fit.r_squared,
                      "low_confidence" if cell.fit.low_confidence else ""])
    sink.flush(args.out)
    return EXIT_OK


def _oracle_suite(seed: int):
    """All brute-force cross-checks; returns [(name, max_dev, threshold)]."""
    from . import oracle

    results = []
    dev_energy = 0.0
    dev_entropy = 0.0
    dev_mi = 0.0
    for N in (4, 6, 8):
        for alpha in (0.0, 1.0, 2.0, 30.0):
            for mu in (0.5, 1.0, 1.5):
                for delta in (-1.0, 1.0):
                    p = ModelParams(N=N, mu=mu, delta=delta, alpha=alpha)
                    e_exact, state = oracle.exact_ground_state(p)
                    dev_energy = max(
                        dev_energy, abs(e_exact - oracle.ground_energy_momentum(p))
                    )
                    if N == 8:
                        from .correlators import ground_correlators

                        table = ground_correlators(p, N - 1)
                        for L in (2, 3, 4):
                            W = build_correlation_matrix(table, block_sites(L))
                            s_fast = von_neumann_entropy(W)
                            rdm = oracle.exact_rdm(state, 0, L, N)
                            s_exact = oracle.entropy_of_rdm(rdm)
                            dev_entropy = max(dev_entropy, abs(s_fast - s_exact))
                        mi_fast = mutual_information(table, 2)
                        s1 = oracle.entropy_of_rdm(oracle.exact_rdm(state, 0, 2, N))
                        s2 = oracle.entropy_of_rdm(oracle.exact_rdm(state, 2, 2, N))
                        s12 = oracle.entropy_of_rdm(oracle.exact_rdm(state, 0, 4, N))
                        dev_mi = max(dev_mi, abs(mi_fast - (s1 + s2 - s12)))
    results.append(("ground_energy", dev_energy, 1e-8))
    results.append(("block_entropy", dev_entropy, 1e-8))
    results.append(("mutual_information", dev_mi, 1e-8))

    # negativity bound on random quench stationary states, 4-site subsystems
    rng = np.random.default_rng(seed)
    worst_gap = np.inf
    dev_corr = 0.0
    for _ in range(50):
        mu_i, mu_f = rng.uniform(-2.0, 2.0, size=2)
        d_i, d_f = rng.uniform(0.2, 2.0, size=2) * rng.choice([-1.0, 1.0], size=2)
        alpha = float(rng.choice([0.0, 1.0, 2.0]))
        q = QuenchProtocol(
            ModelParams(8, float(mu_i), float(d_i), alpha),
            ModelParams(8, float(mu_f), float(d_f), alpha),
        )
        table = stationary_correlators(q, 7)
        W = build_correlation_matrix(table, block_sites(4))
        rho = oracle.gaussian_state_from_covariance(W)
        C, F = oracle.correlations_of_state(rho, 4)
        m = 4
        dev_corr = max(dev_corr,
                       float(np.max(np.abs(C - W.W[m:, m:]))),
                       float(np.max(np.abs(F - W.W[:m, m:]))))
        gap = logneg_upper_bound_w(W, 2) - oracle.exact_log_negativity(rho, 4, 4)
        worst_gap = min(worst_gap, gap)
    results.append(("state_reconstruction", dev_corr, 1e-8))
    results.append(("negativity_bound_gap_min", -worst_gap, 1e-8))
    return results


def run_oracle_check(args) -> int:
    if args.n is not None and args.n > 10:
        raise ValidationError(f"oracle checks are limited to N <= 10, got {args.n}")
    results = _oracle_suite(args.seed)
    sink = _CsvSink({"subcommand": "oracle-check", "seed": args.seed})
    sink.row(["check", "max_deviation", "threshold", "status"])
    failed = False
    for name, dev, thr in results:
        ok = dev <= thr
        failed = failed or not ok
        sink.row([name, dev, thr, "pass" if ok else "FAIL"])
    sink.flush(args.out)
    if failed:
        raise OracleMismatchError("one or more oracle checks failed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrk",
        description="Quench and entanglement sweeps for the long-range Kitaev chain.",
    )
    parser.add_argument("--version", action="version", version=f"lrkq {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, default=None, help="chain length (even)")
        sp.add_argument("--alpha", type=float, default=2.0, help="pairing decay exponent")
        sp.add_argument("--mu-i", type=float, default=1.0, help="prequench chemical potential")
        sp.add_argument("--delta-i", type=float, default=-1.0, help="prequench pairing strength")
        sp.add_argument("--mu-f", type=float, default=1.0, help="postquench chemical potential")
        sp.add_argument("--delta-f", type=float, default=1.0, help="postquench pairing strength")
        sp.add_argument("--mu-grid", default=None, metavar="LO:HI:STEPS")
        sp.add_argument("--delta-grid", default=None, metavar="LO:HI:STEPS")
        sp.add_argument("--l-range", default=None, metavar="L1,L2,...")
        sp.add_argument("--measure", choices=MEASURES, default="mi")
        sp.add_argument("--out", default=None, metavar="PATH.CSV")
        sp.add_argument("--workers", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)

    for name, func in (
        ("ground", run_ground),
        ("quench-sweep", run_quench_sweep),
        ("phase-plot", run_phase_plot),
        ("oracle-check", run_oracle_check),
    ):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(func=func)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OracleMismatchError as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except ArithmeticError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
