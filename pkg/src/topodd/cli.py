"""Command-line front end.

Exit codes: 0 success, 2 usage or configuration error, 3 numerical
verification failure. Frequencies are given in MHz (multiplied by 2 pi
internally) and times in ns.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .pulses import RectPulse, make_ae_pulse, make_lz_pulse
from .qasm import DEFAULT_SHOTS, emit_qasm
from .scanio import to_csv, to_json
from .sequences import (
    FAMILIES,
    check_conditions,
    detuning_order,
    get_sequence,
    verify_identity_all_orders,
    area_error_propagator,
)
from .simulator import STATES, Protocol, SequenceSpec, sample_shots, scan_1d, scan_2d
from .su2 import phase_insensitive_error

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class RunConfig:
    family: str
    n: int
    axis: str = "2d"
    xi_range: tuple = (-1.0, 1.0)
    delta_range: tuple = (-1.0, 1.0)
    points: int = 201
    nx: int = 41
    ny: int = 41
    model: str = "rect"
    rabi_mhz: float = 25.0
    duration_ns: float = 20.0
    delay_ns: float = 0.0
    sweep_mhz: float = 0.0
    state: str = "1"
    fmt: str = "csv"
    output: str = "-"
    workers: int = 1
    shots: int = 0
    seed: int = None
    timestamp: bool = False
    figure: str = None

    def validate(self):
        try:
            get_sequence(self.family, self.n)
        except ValueError as exc:
            raise ConfigError("family/n", str(exc)) from None
        if self.axis not in ("area", "detuning", "2d"):
            raise ConfigError("axis", f"must be area, detuning or 2d, got {self.axis!r}")
        for name in ("xi_range", "delta_range"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ConfigError(name, f"need finite lo < hi, got [{lo}, {hi}]")
        for name in ("points", "nx", "ny"):
            if getattr(self, name) < 2:
                raise ConfigError(name, "must be >= 2")
        if self.model not in ("rect", "ae", "lz"):
            raise ConfigError("model", f"must be rect, ae or lz, got {self.model!r}")
        if not self.rabi_mhz > 0:
            raise ConfigError("rabi_mhz", "must be > 0")
        if not self.duration_ns > 0:
            raise ConfigError("duration_ns", "must be > 0")
        if self.delay_ns < 0:
            raise ConfigError("delay_ns", "must be >= 0")
        if self.state not in STATES:
            raise ConfigError("state", f"must be one of {', '.join(STATES)}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format", "must be csv or json")
        if self.workers < 1:
            raise ConfigError("workers", "must be >= 1")
        if self.shots < 0:
            raise ConfigError("shots", "must be >= 0")

    def sequence_spec(self) -> SequenceSpec:
        rabi = 2 * math.pi * self.rabi_mhz * 1e6
        duration = self.duration_ns * 1e-9
        sweep = 2 * math.pi * self.sweep_mhz * 1e6
        if self.model == "rect":
            pulse = RectPulse(rabi, duration)
        elif self.model == "ae":
            pulse = make_ae_pulse(rabi, sweep, width=1.0 / rabi)
        else:
            half = duration / 2
            pulse = make_lz_pulse(rabi, sweep / half, half)
        return SequenceSpec(get_sequence(self.family, self.n), pulse, delay=self.delay_ns * 1e-9)


def _phase_lines(phases, exact_only: bool) -> str:
    out = ", ".join(str(p) for p in phases) + " (×π)\n"
    if not exact_only:
        out += ", ".join(repr(p.radians) if p.value else "0" for p in phases) + " (rad)\n"
    return out


def cmd_phases(args) -> int:
    seq = get_sequence(args.family, args.n)
    sys.stdout.write(_phase_lines(seq, args.exact))
    return EXIT_OK


def cmd_verify(args) -> int:
    seq = get_sequence(args.family, args.n)
    report = check_conditions(seq)
    ok, worst = verify_identity_all_orders(seq, args.samples)
    diag = phase_insensitive_error(area_error_propagator(seq, 0.5))
    order = detuning_order(seq)
    result = {
        "sequence": seq.name,
        "pulses": len(seq),
        "sum_condition": report.sum_condition,
        "sum_residual": report.sum_residual,
        "pi_pairing": report.pi_pairing,
        "palindrome_pi_shift": report.palindrome_pi_shift,
        "commuting_neighbors": report.commuting_neighbors,
        "all_order_cancellation": ok,
        "max_epsilon": worst,
        "samples": args.samples,
        "detuning_order": order,
        "phase_insensitive_epsilon_xi_0.5": diag,
    }
    if args.json:
        sys.stdout.write(json.dumps(result, indent=1) + "\n")
    else:
        yn = lambda v: "true" if v else "false"  # noqa: E731
        sys.stdout.write(
            f"sequence: {seq.name} ({len(seq)} pulses)\n"
            f"sum condition: {yn(report.sum_condition)} (residual {report.sum_residual:.3g})\n"
            f"pi pairing: {yn(report.pi_pairing)}\n"
            f"palindrome pi-shift: {yn(report.palindrome_pi_shift)}\n"
            f"commuting neighbors: {yn(report.commuting_neighbors)}\n"
            f"all-order cancellation: {yn(ok)} (max eps {worst:.3g} over {args.samples} samples)\n"
            f"detuning order: {order}\n"
            f"diagnostic (non-standard) 1-|U11|+|U12| at xi=0.5: {diag:.3g}\n"
        )
    return EXIT_OK if ok else EXIT_VERIFY


def run_scan(cfg: RunConfig):
    cfg.validate()
    proto = Protocol(cfg.state, cfg.sequence_spec())
    if cfg.axis == "2d":
        scan = scan_2d(proto, cfg.xi_range, cfg.delta_range, cfg.nx, cfg.ny, cfg.workers, cfg.timestamp)
    else:
        lo, hi = cfg.xi_range if cfg.axis == "area" else cfg.delta_range
        scan = scan_1d(proto, cfg.axis, lo, hi, cfg.points, cfg.workers, cfg.timestamp)
    if cfg.shots:
        scan = sample_shots(scan, cfg.shots, cfg.seed)
    return scan


def cmd_scan(args) -> int:
    cfg = RunConfig(
        family=args.family, n=args.n, axis=args.axis,
        xi_range=tuple(args.xi_range), delta_range=tuple(args.delta_range),
        points=args.points, nx=args.nx, ny=args.ny, model=args.model,
        rabi_mhz=args.rabi_mhz, duration_ns=args.duration_ns, delay_ns=args.delay_ns,
        sweep_mhz=args.sweep_mhz, state=args.state, fmt=args.format, output=args.output,
        workers=args.workers, shots=args.shots, seed=args.seed, timestamp=args.timestamp,
        figure=args.figure,
    )
    scan = run_scan(cfg)
    text = to_csv(scan) if cfg.fmt == "csv" else to_json(scan)
    if cfg.output == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if cfg.figure:
        from .plotting import plot_scan

        plot_scan(scan, cfg.figure)
    return EXIT_OK


def cmd_qasm(args) -> int:
    seq = get_sequence(args.family, args.n)
    text = emit_qasm(seq, args.xi, args.shots)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def _add_selector(p):
    p.add_argument("--family", required=True, type=str.lower, choices=FAMILIES)
    p.add_argument("--n", required=True, type=int, help="number of pulses")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topodd", description="Phase-modulated dynamical decoupling toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phases", help="print sequence phases")
    _add_selector(p)
    p.add_argument("--exact", action="store_true", help="only the rational multiples of pi")
    p.set_defaults(func=cmd_phases)

    p = sub.add_parser("verify", help="check cancellation conditions")
    _add_selector(p)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="robustness scan over pulse-area error and detuning")
    _add_selector(p)
    p.add_argument("--axis", choices=("area", "detuning", "2d"), default="2d")
    p.add_argument("--xi-range", nargs=2, type=float, default=(-1.0, 1.0), metavar=("LO", "HI"))
    p.add_argument("--delta-range", nargs=2, type=float, default=(-1.0, 1.0), metavar=("LO", "HI"),
                   help="detuning range in units of the Rabi frequency")
    p.add_argument("--points", type=int, default=201, help="1D grid size")
    p.add_argument("--nx", type=int, default=41, help="2D grid size along xi")
    p.add_argument("--ny", type=int, default=41, help="2D grid size along detuning")
    p.add_argument("--model", choices=("rect", "ae", "lz"), default="rect")
    p.add_argument("--rabi-mhz", type=float, default=25.0)
    p.add_argument("--duration-ns", type=float, default=20.0)
    p.add_argument("--delay-ns", type=float, default=0.0)
    p.add_argument("--sweep-mhz", type=float, default=0.0,
                   help="Allen-Eberly detuning amplitude or Landau-Zener sweep end point")
    p.add_argument("--state", choices=STATES, default="1", help="initial Pauli eigenstate")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--shots", type=int, default=0, help="binomial shot-noise resampling (0: off)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--timestamp", action="store_true", help="record creation time in the header")
    p.add_argument("--figure", default=None, help="also render the scan to this image file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("qasm", help="export the X-DD-X protocol as OpenQASM 3")
    _add_selector(p)
    p.add_argument("--xi", type=float, default=0.0)
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_qasm)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"topodd {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
