"""``swp-clock``: barrier-width sweeps of stationary or wave-packet averaged times.

Examples
--------
Stationary reflection and dwell times versus width, propagating energy::

    swp-clock stationary --v0 0.30 --v1 0.15 --energy 0.35 \\
        --a-min 0.1 --a-max 40 --a-steps 400 --out resonant.csv

Averages over a Gaussian packet centred on a tunnelling energy::

    swp-clock ensemble --v0 0.30 --v1 0.15 --energy 0.22 --sigma 10 --z0 -80 \\
        --a-min 0.5 --a-max 40 --a-steps 200 --out packet.csv

Exit status: 0 success, 2 usage error, 3 quadrature failure, 4 transmission
time undefined at a grid point, 5 output failed validation.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .clock import stationary_times
from .ensemble import GaussianPacket, QuadratureSpec, ensemble_averages
from .errors import InvalidParameter, QuadratureFailure, SWPClockError, TransmissionUndefined
from .scattering import BarrierConfig, Regime, ScatteringContext, wave_numbers

STATIONARY_COLUMNS = ["a", "k1", "regime", "T", "R", "t_ct", "t_0", "t_cr", "tau_d"]
ENSEMBLE_COLUMNS = ["a", "p_t", "p_r", "avg_tct", "avg_tcr", "avg_taud_t", "avg_taud_r",
                    "stat_tct_k0", "stat_tcr_k0", "stat_taud_k0", "negk_weight"]
FLOAT_FORMAT = "%.12e"
VALIDATION_TOL = 1e-10

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_QUADRATURE = 3
EXIT_TRANSMISSION = 4
EXIT_VALIDATION = 5


class UsageError(SWPClockError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    v0: float
    v1: float
    mu: float
    energy: float | None
    k0: float | None
    sigma: float | None
    z0: float | None
    a_min: float
    a_max: float
    a_steps: int
    quad: QuadratureSpec
    out_path: str
    threads: int = field(default=0, compare=False)

    @property
    def ctx(self):
        return ScatteringContext(hbar=1.0, mu=self.mu)

    @property
    def k1(self):
        return self.k0 if self.k0 is not None else self.ctx.wave_number(self.energy)

    def widths(self):
        return np.linspace(self.a_min, self.a_max, self.a_steps)

    def canonical_args(self):
        parts = [self.mode, "--v0", repr(self.v0), "--v1", repr(self.v1), "--mu", repr(self.mu)]
        if self.energy is not None:
            parts += ["--energy", repr(self.energy)]
        else:
            parts += ["--k0", repr(self.k0)]
        if self.mode == "ensemble":
            parts += ["--sigma", repr(self.sigma), "--z0", repr(self.z0)]
        parts += ["--a-min", repr(self.a_min), "--a-max", repr(self.a_max),
                  "--a-steps", str(self.a_steps), "--rel-tol", repr(self.quad.rel_tol),
                  "--k-window", repr(self.quad.k_window), "--out", self.out_path]
        return " ".join(parts)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    parser = _Parser(prog="swp-clock", description="Barrier-width sweeps of SWP clock and dwell times.")
    parser.add_argument("--version", action="version", version=f"swp-clock {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in ("stationary", "ensemble"):
        p = sub.add_parser(mode)
        p.add_argument("--v0", type=float, required=True, help="barrier height")
        p.add_argument("--v1", type=float, required=True, help="right asymptotic level")
        p.add_argument("--mu", type=float, default=1.0, help="particle mass (default 1)")
        particle = p.add_mutually_exclusive_group(required=True)
        particle.add_argument("--energy", type=float, help="incident (or central) energy")
        particle.add_argument("--k0", type=float, help="incident (or central) wave number")
        if mode == "ensemble":
            p.add_argument("--sigma", type=float, required=True, help="packet spatial width")
            p.add_argument("--z0", type=float, required=True, help="packet initial centre")
        p.add_argument("--a-min", type=float, required=True)
        p.add_argument("--a-max", type=float, required=True)
        p.add_argument("--a-steps", type=int, required=True, help="grid points, endpoints included")
        p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--rel-tol", type=float, default=QuadratureSpec.rel_tol)
        p.add_argument("--k-window", type=float, default=QuadratureSpec.k_window)
        p.add_argument("--threads", type=int, default=0, help="worker threads (default: all cores)")
    return parser


def parse_cli(argv) -> SweepSpec:
    """Parse and validate command-line arguments; raises :class:`UsageError`."""
    args = _build_parser().parse_args(list(argv))
    if not args.a_min > 0:
        raise UsageError("--a-min must be positive")
    if not args.a_max > args.a_min:
        raise UsageError("--a-max must exceed --a-min")
    if args.a_steps < 2:
        raise UsageError("--a-steps must be at least 2")
    if args.threads < 0:
        raise UsageError("--threads must be non-negative")
    if args.energy is not None and not args.energy > 0:
        raise UsageError("--energy must be positive")
    if args.k0 is not None and not args.k0 > 0:
        raise UsageError("--k0 must be positive")
    try:
        ScatteringContext(mu=args.mu)
        BarrierConfig(args.v0, args.v1, args.a_min)
        quad = QuadratureSpec(rel_tol=args.rel_tol, k_window=args.k_window)
        if args.mode == "ensemble":
            GaussianPacket(1.0, args.sigma, args.z0)
    except InvalidParameter as exc:
        raise UsageError(str(exc)) from None
    return SweepSpec(
        mode=args.mode, v0=args.v0, v1=args.v1, mu=args.mu, energy=args.energy, k0=args.k0,
        sigma=getattr(args, "sigma", None), z0=getattr(args, "z0", None),
        a_min=args.a_min, a_max=args.a_max, a_steps=args.a_steps, quad=quad,
        out_path=args.out, threads=args.threads,
    )


def _stationary_row(spec, a):
    ctx = spec.ctx
    k1 = spec.k1
    t = stationary_times(ctx, BarrierConfig(spec.v0, spec.v1, a), k1)
    return [a, k1, t.regime.name.lower(), t.t_coeff, t.r_coeff, t.t_ct, t.t_0, t.t_cr, t.tau_d]


def _ensemble_row(spec, a):
    ctx = spec.ctx
    barrier = BarrierConfig(spec.v0, spec.v1, a)
    packet = GaussianPacket(spec.k1, spec.sigma, spec.z0)
    avg = ensemble_averages(packet, ctx, barrier, spec.quad, warn=False)
    s = stationary_times(ctx, barrier, packet.k0, allow_extrapolated=True)
    return [a, avg.p_t, avg.p_r, avg.avg_tct, avg.avg_tcr, avg.avg_taud_t, avg.avg_taud_r,
            s.t_ct, s.t_cr, s.tau_d, avg.negk_weight]


def _format(value):
    return value if isinstance(value, str) else FLOAT_FORMAT % value


def _validate_stationary(path):
    with open(path, newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        for row in rows:
            T, R = float(row["T"]), float(row["R"])
            t_ct, t_cr, tau = float(row["t_ct"]), float(row["t_cr"]), float(row["tau_d"])
            if abs(T + R - 1.0) > VALIDATION_TOL:
                return f"T+R-1 = {T + R - 1.0:.3g} at a={row['a']}"
            if abs(tau - (T * t_ct + R * t_cr)) > VALIDATION_TOL * (1.0 + abs(tau)):
                return f"dwell identity violated at a={row['a']}"
    return None


def run_sweep(spec: SweepSpec, stderr=None) -> int:
    """Evaluate every grid width and write the CSV; returns the exit status."""
    stderr = stderr or sys.stderr
    ctx = spec.ctx
    if spec.mode == "stationary":
        waves = wave_numbers(ctx, BarrierConfig(spec.v0, spec.v1, spec.a_min), spec.k1)
        if waves.regime is Regime.BELOW_RIGHT_LEVEL:
            e = ctx.energy(spec.k1)
            print(f"swp-clock: transmission time undefined at a={spec.a_min:g}: "
                  f"E={e:g} <= v1={spec.v1:g}", file=stderr)
            return EXIT_TRANSMISSION
        row_fn, columns = _stationary_row, STATIONARY_COLUMNS
    else:
        row_fn, columns = _ensemble_row, ENSEMBLE_COLUMNS

    widths = [float(a) for a in spec.widths()]
    workers = spec.threads or os.cpu_count() or 1
    try:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda a: row_fn(spec, a), widths))
    except QuadratureFailure as exc:
        print(f"swp-clock: quadrature failed: {exc}", file=stderr)
        return EXIT_QUADRATURE
    except TransmissionUndefined as exc:
        print(f"swp-clock: transmission time undefined: {exc}", file=stderr)
        return EXIT_TRANSMISSION

    out_dir = os.path.dirname(os.path.abspath(spec.out_path))
    fd, tmp = tempfile.mkstemp(prefix=".swp-clock-", suffix=".csv", dir=out_dir)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(f"# swp-clock v{__version__}; args: {spec.canonical_args()}\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format(v) for v in row])
        if spec.mode == "stationary":
            problem = _validate_stationary(tmp)
            if problem:
                print(f"swp-clock: output validation failed: {problem}", file=stderr)
                os.unlink(tmp)
                return EXIT_VALIDATION
        os.replace(tmp, spec.out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        spec = parse_cli(argv)
    except UsageError as exc:
        print(f"swp-clock: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run_sweep(spec)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
