"""Command-line front end: parameter entry, sweep orchestration, CSV output.

Output format, for every command:
  line 1   ``# config: key=value ...``  (the fully resolved configuration;
           parses back into an identical RunConfig)
  line 2   column header
  rest     data rows, numbers printed with 12 significant digits

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
The environment variable DRIVENQSL_THREADS overrides the number of worker
threads used for sweeps (default 1); it never changes the output bytes.

With --plot PATH the sweep and trace commands additionally render a PNG
figure of the rows just written; the CSV stays the data contract.
"""

import argparse
import os
import shlex
import sys
from dataclasses import dataclass, fields

import numpy as np

from .distinguish import blp_measure, maximize_blp, optimal_pair
from .model import PhysicalParams, amplitude, amplitude_trace, population
from .oracle import IntegrationError, integrate_amplitude
from .speedlimit import qslt_pure
from .transition import NoTransitionError, critical_drive_strength, sweep_omega, sweep_window

COMMANDS = ("evolve", "qslt", "nonmarkov", "critical-omega", "sweep-omega", "sweep-window", "validate")

VALIDATE_WIDTHS = (0.05, 0.5, 3.0, 6.0, 9.0)
VALIDATE_DRIVES = (0.0, 2.0, 5.31, 8.0, 20.0, 50.0)
VALIDATE_MAX_ERROR = 1e-8

THREADS_ENV_VAR = "DRIVENQSL_THREADS"


@dataclass(frozen=True)
class RunConfig:
    command: str
    spectral_width: float = 3.0
    drive_strength: float = 0.0
    qubit_freq: float = 0.0
    reservoir_center: float = 0.0
    tau_d: float = 1.0
    t_end: float = 1.0
    points: int = 0
    omega_min: float = 0.0
    omega_max: float = 20.0
    tau_min: float = 0.0
    tau_max: float = 5.0
    drive_strengths: tuple = (0.0, 2.0, 4.0)
    samples: int = 0
    seed: int = 0
    resolution: float = 1e-3
    drive_cap: float = 1e3
    tol: float = 1e-12
    output: str = "-"
    plot: str = ""


class CliError(ValueError):
    """Validation failure naming the offending flag."""


def fmt(value) -> str:
    """Fixed 12-significant-digit positional decimal, locale independent."""
    value = float(value)
    if np.isnan(value):
        return "nan"
    return np.format_float_positional(value, precision=12, unique=False, fractional=False)


def _encode(value) -> str:
    if isinstance(value, tuple):
        return ",".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def config_line(config: RunConfig) -> str:
    parts = [f"{f.name}={shlex.quote(_encode(getattr(config, f.name)))}" for f in fields(RunConfig)]
    return "# config: " + " ".join(parts)


def parse_config_line(line: str) -> RunConfig:
    """Invert config_line; raises ValueError on malformed input."""
    prefix = "# config: "
    if not line.startswith(prefix):
        raise ValueError("not a config line")
    kwargs = {}
    types = {f.name: f.type for f in fields(RunConfig)}
    for token in shlex.split(line[len(prefix):]):
        key, _, raw = token.partition("=")
        if key not in types:
            raise ValueError(f"unknown config key {key!r}")
        kind = getattr(types[key], "__name__", types[key])
        if kind == "tuple":
            kwargs[key] = tuple(float(v) for v in raw.split(",")) if raw else ()
        elif kind == "float":
            kwargs[key] = float(raw)
        elif kind == "int":
            kwargs[key] = int(raw)
        else:
            kwargs[key] = raw
    return RunConfig(**kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drivenqsl",
        description="Driven-qubit quantum-speed-limit and non-Markovianity calculator "
        "(all rates in units of the reservoir coupling rate).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--lambda", dest="spectral_width", type=float, default=3.0,
                       help="reservoir spectral width lambda (default 3)")
        p.add_argument("--drive-strength", type=float, default=0.0,
                       help="classical driving strength Omega (default 0)")
        p.add_argument("--qubit-freq", type=float, default=0.0,
                       help="bare qubit frequency omega_0 (default 0)")
        p.add_argument("--spectral-center", dest="reservoir_center", type=float, default=0.0,
                       help="reservoir center frequency omega_c (default 0)")
        p.add_argument("--tau-d", type=float, default=1.0, help="driving time (default 1)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
        p.add_argument("-o", "--output", default="-", help="output CSV path, '-' for stdout")

    p = sub.add_parser("evolve", help="sample amplitude, population and sigma on a time grid")
    add_common(p)
    p.add_argument("--t-end", type=float, default=1.0, help="end of the time grid (default 1)")
    p.add_argument("--points", type=int, default=0, help="grid points (0 = default density)")
    p.add_argument("--plot", default="", help="also render a PNG figure to this path")

    p = sub.add_parser("qslt", help="speed-limit report for a pure |+> start over [0, tau-d]")
    add_common(p)

    p = sub.add_parser("nonmarkov", help="window non-Markovianity for the optimal pair "
                                         "(and optionally a random-pair maximization)")
    add_common(p)
    p.add_argument("--samples", type=int, default=0,
                   help="random initial-state pairs to maximize over (0 = optimal pair only)")

    p = sub.add_parser("critical-omega", help="critical driving strength of the transition")
    add_common(p)
    p.add_argument("--resolution", type=float, default=1e-3, help="bisection resolution (default 1e-3)")
    p.add_argument("--drive-cap", type=float, default=1e3, help="bracket search cap (default 1e3)")

    p = sub.add_parser("sweep-omega", help="sweep the driving strength")
    add_common(p)
    p.add_argument("--omega-min", type=float, default=0.0)
    p.add_argument("--omega-max", type=float, default=20.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--plot", default="", help="also render a PNG figure to this path")

    p = sub.add_parser("sweep-window", help="sweep the start time of the driving window")
    add_common(p)
    p.add_argument("--drive-strengths", default="0,2,4",
                   help="comma-separated driving strengths (default 0,2,4)")
    p.add_argument("--tau-min", type=float, default=0.0)
    p.add_argument("--tau-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=501)
    p.add_argument("--plot", default="", help="also render a PNG figure to this path")

    p = sub.add_parser("validate", help="oracle-equivalence suite: closed form vs ODE integration")
    add_common(p)
    p.add_argument("--t-end", type=float, default=10.0, help="comparison window end (default 10)")
    p.add_argument("--tol", type=float, default=1e-12, help="ODE tolerance (default 1e-12)")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs = {"command": args.command}
    namespace = vars(args)
    for f in fields(RunConfig):
        if f.name in namespace and f.name != "command":
            value = namespace[f.name]
            if f.name == "drive_strengths" and isinstance(value, str):
                try:
                    value = tuple(float(v) for v in value.split(",") if v.strip())
                except ValueError:
                    raise CliError("--drive-strengths must be a comma-separated list of numbers")
                if not value:
                    raise CliError("--drive-strengths must not be empty")
            kwargs[f.name] = value
    return RunConfig(**kwargs)


def _validate(config: RunConfig) -> None:
    """Check every numeric flag before any computation starts."""
    if config.command not in COMMANDS:
        raise CliError(f"unknown command {config.command!r}")
    if not config.spectral_width > 0:
        raise CliError(f"--lambda must be > 0, got {config.spectral_width}")
    if config.drive_strength < 0:
        raise CliError(f"--drive-strength must be >= 0, got {config.drive_strength}")
    if not config.tau_d > 0:
        raise CliError(f"--tau-d must be > 0, got {config.tau_d}")
    if config.command in ("evolve", "validate") and not config.t_end > 0:
        raise CliError(f"--t-end must be > 0, got {config.t_end}")
    if config.command == "evolve" and config.points != 0 and config.points < 2:
        raise CliError(f"--points must be >= 2 (or 0 for the default grid), got {config.points}")
    if config.command in ("sweep-omega", "sweep-window") and config.points < 2:
        raise CliError(f"--points must be >= 2, got {config.points}")
    if config.command == "sweep-omega" and not config.omega_max > config.omega_min:
        raise CliError(f"--omega-max must exceed --omega-min, got {config.omega_min}..{config.omega_max}")
    if config.command == "sweep-window" and not config.tau_max > config.tau_min:
        raise CliError(f"--tau-max must exceed --tau-min, got {config.tau_min}..{config.tau_max}")
    if config.command == "sweep-window" and any(d < 0 for d in config.drive_strengths):
        raise CliError("--drive-strengths must be >= 0")
    if config.command == "nonmarkov" and config.samples < 0:
        raise CliError(f"--samples must be >= 0, got {config.samples}")
    if config.command == "critical-omega" and not config.resolution > 0:
        raise CliError(f"--resolution must be > 0, got {config.resolution}")
    if config.command == "critical-omega" and not config.drive_cap > 0:
        raise CliError(f"--drive-cap must be > 0, got {config.drive_cap}")
    if config.command == "validate" and not config.tol > 0:
        raise CliError(f"--tol must be > 0, got {config.tol}")


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(int(raw), 1)
    except ValueError:
        return 1


def _params(config: RunConfig) -> PhysicalParams:
    return PhysicalParams(
        spectral_width=config.spectral_width,
        drive_strength=config.drive_strength,
        qubit_freq=config.qubit_freq,
        reservoir_center=config.reservoir_center,
    )


def _emit(stream, config: RunConfig, header: str, rows) -> None:
    stream.write(config_line(config) + "\n")
    stream.write(header + "\n")
    for row in rows:
        stream.write(",".join(row) + "\n")


def _run_evolve(config, stream):
    trace = amplitude_trace(_params(config), config.t_end, config.points or None)
    rows = (
        [fmt(t), fmt(e.real), fmt(e.imag), fmt(r.real), fmt(r.imag), fmt(p), fmt(s)]
        for t, e, r, p, s in zip(
            trace.times, trace.amplitude, trace.amplitude_rate, trace.population, trace.sigma
        )
    )
    _emit(stream, config, "t,amp_re,amp_im,rate_re,rate_im,population,sigma", rows)
    if config.plot:
        from .plotting import save_trace_plot

        save_trace_plot(trace, config.plot)
    return 0


def _run_qslt(config, stream):
    report = qslt_pure(_params(config), config.tau_d)
    rows = [
        ["tau_qsl", fmt(report.tau_qsl)],
        ["tau_qsl_ratio", fmt(report.ratio)],
        ["bound_p1", fmt(report.bound_p1)],
        ["bound_p2", fmt(report.bound_p2)],
        ["bound_pinf", fmt(report.bound_pinf)],
        ["bures_angle", fmt(report.bures_angle)],
        ["population", fmt(population(_params(config), config.tau_d))],
        ["no_evolution", str(int(report.no_evolution))],
    ]
    _emit(stream, config, "key,value", rows)
    return 0


def _run_nonmarkov(config, stream):
    params = _params(config)
    window = (0.0, config.tau_d)
    result = blp_measure(params, optimal_pair(), window)
    rows = [["blp", fmt(result.measure)], ["n_growth_intervals", str(len(result.growth_intervals))]]
    for i, (a, b) in enumerate(result.growth_intervals, start=1):
        rows.append([f"growth_interval_{i}_start", fmt(a)])
        rows.append([f"growth_interval_{i}_end", fmt(b)])
    if config.samples > 0:
        best = maximize_blp(params, window, config.samples, config.seed)
        rows.append(["best_sampled_blp", fmt(best.measure)])
    _emit(stream, config, "key,value", rows)
    return 0


def _run_critical_omega(config, stream):
    omega_c = critical_drive_strength(
        config.spectral_width,
        config.tau_d,
        resolution=config.resolution,
        drive_cap=config.drive_cap,
        qubit_freq=config.qubit_freq,
        reservoir_center=config.reservoir_center,
    )
    _emit(stream, config, "key,value", [["omega_c", fmt(omega_c)]])
    return 0


def _run_sweep_omega(config, stream):
    rows = sweep_omega(
        config.spectral_width,
        config.tau_d,
        (config.omega_min, config.omega_max),
        config.points,
        qubit_freq=config.qubit_freq,
        reservoir_center=config.reservoir_center,
        workers=_workers(),
    )
    _emit(
        stream,
        config,
        "omega,tau_qsl_ratio,blp,pop_deficit",
        ([fmt(r.drive_strength), fmt(r.tau_qsl_ratio), fmt(r.blp_measure), fmt(r.population_deficit)]
         for r in rows),
    )
    if config.plot:
        from .plotting import save_omega_sweep_plot

        save_omega_sweep_plot(rows, config.plot, tau_D=config.tau_d)
    return 0


def _run_sweep_window(config, stream):
    rows = sweep_window(
        config.spectral_width,
        config.drive_strengths,
        config.tau_d,
        (config.tau_min, config.tau_max),
        config.points,
        qubit_freq=config.qubit_freq,
        reservoir_center=config.reservoir_center,
        workers=_workers(),
    )
    _emit(
        stream,
        config,
        "omega,tau,tau_qsl_ratio,pop_deficit",
        ([fmt(r.drive_strength), fmt(r.tau_window_start), fmt(r.tau_qsl_ratio), fmt(r.population_deficit)]
         for r in rows),
    )
    if config.plot:
        from .plotting import save_window_sweep_plot

        save_window_sweep_plot(rows, config.plot)
    return 0


def _run_validate(config, stream):
    rows = []
    worst = 0.0
    for width in VALIDATE_WIDTHS:
        for drive in VALIDATE_DRIVES:
            params = PhysicalParams(width, drive, config.qubit_freq, config.reservoir_center)
            trace = integrate_amplitude(params, config.t_end, tol=config.tol)
            err = float(np.abs(trace.amplitude - amplitude(params, trace.times)).max())
            worst = max(worst, err)
            rows.append([fmt(width), fmt(drive), fmt(err)])
    _emit(stream, config, "lambda,omega,max_abs_error", rows)
    ok = worst < VALIDATE_MAX_ERROR
    print(
        f"validate: max |closed-form - ODE| = {worst:.3e} "
        f"({'OK' if ok else 'FAIL'}, threshold {VALIDATE_MAX_ERROR:.0e})",
        file=sys.stderr,
    )
    return 0 if ok else 3


_RUNNERS = {
    "evolve": _run_evolve,
    "qslt": _run_qslt,
    "nonmarkov": _run_nonmarkov,
    "critical-omega": _run_critical_omega,
    "sweep-omega": _run_sweep_omega,
    "sweep-window": _run_sweep_window,
    "validate": _run_validate,
}


def run(config: RunConfig, stream=None) -> int:
    """Execute a resolved configuration; returns the process exit status."""
    try:
        _validate(config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if stream is not None or config.output == "-":
            return _RUNNERS[config.command](config, stream or sys.stdout)
        with open(config.output, "w") as fh:
            return _RUNNERS[config.command](config, fh)
    except (NoTransitionError, IntegrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
