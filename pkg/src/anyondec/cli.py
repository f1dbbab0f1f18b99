"""Command-line front end.

Subcommands::

    anyondec rates|evolve|shorttime|compare|sweep --config FILE
             [--out DIR] [--format csv|json] [--jobs N] [--threshold X]

Configuration is a single JSON document (schema in docs/); command-line
flags override file values, and unknown keys anywhere in the file are
rejected by name.  All input units are laboratory units (kelvin, meters,
m/s, seconds).  Output files are deterministic: re-running a command on
the same configuration reproduces byte-identical data.

Exit codes: 0 success, 2 configuration error, 3 numerical-convergence
error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bath, markovian, shorttime
from .bath import QuadratureSettings
from .compare import GridSpec, compare_approximations
from .constants import CODATA2018
from .errors import AnyondecError, ConfigError, ConvergenceError, RangeError
from .markovian import BlochState, IntegratorSettings
from .params import PhysicalParams, dissipation_rate_conventional, to_model

OUT_DIR_ENV = "ANYONDEC_OUT_DIR"

_SWEEPABLE = (
    "temperature",
    "qubit_edge_distance",
    "antidot_separation",
    "splitting",
    "filling_denominator",
)
_RECORDABLE = ("gamma", "ratio", "purity-at-time", "full-curve")


# ---------------------------------------------------------------------------
# configuration loading

def _require_mapping(obj, path):
    if not isinstance(obj, dict):
        raise ConfigError(f"section '{path}' must be a JSON object")
    return obj


def _check_keys(section, allowed, path):
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key '{path}.{key}'" if path else
                              f"unknown key '{key}'")


def _get_number(section, key, path, default=None, required=False):
    if key not in section:
        if required:
            raise ConfigError(f"missing required key '{path}.{key}'")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key '{path}.{key}' must be a number")
    return float(value)


@dataclass(frozen=True)
class RunConfig:
    physical: PhysicalParams
    initial_state: BlochState
    grid: GridSpec | None
    quadrature: QuadratureSettings
    integrator: IntegratorSettings
    out_dir: Path
    out_format: str
    write_svg: bool
    threshold: float
    sweep: dict | None


def _parse_physical(section) -> PhysicalParams:
    allowed = ("dielectric_constant", "edge_velocity", "splitting",
               "temperature", "antidot_separation", "qubit_edge_distance",
               "filling_denominator", "bias")
    _check_keys(section, allowed, "physical")
    m_raw = section.get("filling_denominator")
    if not isinstance(m_raw, int) or isinstance(m_raw, bool):
        raise ConfigError("key 'physical.filling_denominator' must be an integer")
    try:
        return PhysicalParams(
            dielectric_constant=_get_number(section, "dielectric_constant", "physical", required=True),
            edge_velocity=_get_number(section, "edge_velocity", "physical", required=True),
            splitting=_get_number(section, "splitting", "physical", required=True),
            temperature=_get_number(section, "temperature", "physical", required=True),
            antidot_separation=_get_number(section, "antidot_separation", "physical", required=True),
            qubit_edge_distance=_get_number(section, "qubit_edge_distance", "physical", required=True),
            filling_denominator=m_raw,
            bias=_get_number(section, "bias", "physical", default=0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid 'physical' section: {exc}") from exc


def load_config(path: str | os.PathLike, *, out_override=None,
                format_override=None, threshold_override=None) -> RunConfig:
    """Read and validate the JSON configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    raw = _require_mapping(raw, "<root>")
    _check_keys(raw, ("physical", "initial_state", "grid", "quadrature",
                      "integrator", "output", "compare", "sweep"), "")
    if "physical" not in raw:
        raise ConfigError("missing required section 'physical'")
    phys = _parse_physical(_require_mapping(raw["physical"], "physical"))

    init = _require_mapping(raw.get("initial_state", {}), "initial_state")
    _check_keys(init, ("x", "y", "z"), "initial_state")
    try:
        s0 = BlochState(
            x=_get_number(init, "x", "initial_state", default=0.0),
            y=_get_number(init, "y", "initial_state", default=0.0),
            z=_get_number(init, "z", "initial_state", default=1.0),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid 'initial_state' section: {exc}") from exc

    grid = None
    if "grid" in raw:
        gsec = _require_mapping(raw["grid"], "grid")
        _check_keys(gsec, ("t_min", "t_max", "points", "spacing"), "grid")
        spacing = gsec.get("spacing", "logarithmic")
        if spacing not in ("linear", "logarithmic"):
            raise ConfigError("key 'grid.spacing' must be 'linear' or 'logarithmic'")
        points = gsec.get("points", 400)
        if not isinstance(points, int) or isinstance(points, bool):
            raise ConfigError("key 'grid.points' must be an integer")
        try:
            grid = GridSpec(
                t_min=_get_number(gsec, "t_min", "grid", required=True),
                t_max=_get_number(gsec, "t_max", "grid", required=True),
                points=points,
                spacing=spacing,
            )
        except ValueError as exc:
            raise ConfigError(f"invalid 'grid' section: {exc}") from exc

    qsec = _require_mapping(raw.get("quadrature", {}), "quadrature")
    _check_keys(qsec, ("rel_tol", "abs_tol", "max_subdivisions",
                       "truncation_multiplier"), "quadrature")
    max_sub = qsec.get("max_subdivisions", 2000)
    if not isinstance(max_sub, int) or isinstance(max_sub, bool):
        raise ConfigError("key 'quadrature.max_subdivisions' must be an integer")
    try:
        quad = QuadratureSettings(
            rel_tol=_get_number(qsec, "rel_tol", "quadrature", default=1e-10),
            abs_tol=_get_number(qsec, "abs_tol", "quadrature", default=1e-14),
            max_subdivisions=max_sub,
            truncation_multiplier=_get_number(
                qsec, "truncation_multiplier", "quadrature", default=45.0),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid 'quadrature' section: {exc}") from exc

    isec = _require_mapping(raw.get("integrator", {}), "integrator")
    _check_keys(isec, ("method", "rel_tol", "abs_tol", "step", "max_steps"),
                "integrator")
    method = isec.get("method", "rk45")
    max_steps = isec.get("max_steps", 50_000_000)
    if not isinstance(max_steps, int) or isinstance(max_steps, bool):
        raise ConfigError("key 'integrator.max_steps' must be an integer")
    try:
        integ = IntegratorSettings(
            method=method,
            rel_tol=_get_number(isec, "rel_tol", "integrator", default=1e-10),
            abs_tol=_get_number(isec, "abs_tol", "integrator", default=1e-12),
            step=_get_number(isec, "step", "integrator", default=float("nan")),
            max_steps=max_steps,
        )
    except ValueError as exc:
        raise ConfigError(f"invalid 'integrator' section: {exc}") from exc

    osec = _require_mapping(raw.get("output", {}), "output")
    _check_keys(osec, ("directory", "format", "svg"), "output")
    out_dir = out_override or osec.get("directory") or os.environ.get(OUT_DIR_ENV) or "."
    out_format = format_override or osec.get("format", "csv")
    if out_format not in ("csv", "json"):
        raise ConfigError("output format must be 'csv' or 'json'")
    write_svg = osec.get("svg", True)
    if not isinstance(write_svg, bool):
        raise ConfigError("key 'output.svg' must be a boolean")

    csec = _require_mapping(raw.get("compare", {}), "compare")
    _check_keys(csec, ("threshold",), "compare")
    threshold = threshold_override if threshold_override is not None else \
        _get_number(csec, "threshold", "compare", default=0.01)
    if not threshold > 0:
        raise ConfigError("key 'compare.threshold' must be positive")

    sweep = None
    if "sweep" in raw:
        ssec = _require_mapping(raw["sweep"], "sweep")
        _check_keys(ssec, ("parameter", "values", "range", "record", "at_time"),
                    "sweep")
        parameter = ssec.get("parameter")
        if parameter not in _SWEEPABLE:
            raise ConfigError(
                f"key 'sweep.parameter' must be one of {', '.join(_SWEEPABLE)}")
        record = ssec.get("record", "gamma")
        if record not in _RECORDABLE:
            raise ConfigError(
                f"key 'sweep.record' must be one of {', '.join(_RECORDABLE)}")
        if ("values" in ssec) == ("range" in ssec):
            raise ConfigError("sweep needs exactly one of 'values' or 'range'")
        if "values" in ssec:
            values = ssec["values"]
            if (not isinstance(values, list) or not values
                    or any(isinstance(v, bool) or not isinstance(v, (int, float))
                           for v in values)):
                raise ConfigError("key 'sweep.values' must be a nonempty number list")
            values = [float(v) for v in values]
        else:
            rsec = _require_mapping(ssec["range"], "sweep.range")
            _check_keys(rsec, ("start", "stop", "count", "spacing"), "sweep.range")
            count = rsec.get("count")
            if not isinstance(count, int) or isinstance(count, bool) or count < 2:
                raise ConfigError("key 'sweep.range.count' must be an integer >= 2")
            start = _get_number(rsec, "start", "sweep.range", required=True)
            stop = _get_number(rsec, "stop", "sweep.range", required=True)
            spacing = rsec.get("spacing", "linear")
            if spacing == "linear":
                values = list(np.linspace(start, stop, count))
            elif spacing == "logarithmic":
                if start <= 0:
                    raise ConfigError("logarithmic sweep range requires start > 0")
                values = list(np.logspace(math.log10(start), math.log10(stop), count))
            else:
                raise ConfigError(
                    "key 'sweep.range.spacing' must be 'linear' or 'logarithmic'")
        at_time = _get_number(ssec, "at_time", "sweep", default=None)
        if record == "purity-at-time" and at_time is None:
            raise ConfigError("sweep record 'purity-at-time' requires 'sweep.at_time'")
        sweep = {"parameter": parameter, "values": values, "record": record,
                 "at_time": at_time}

    return RunConfig(
        physical=phys, initial_state=s0, grid=grid, quadrature=quad,
        integrator=integ, out_dir=Path(out_dir), out_format=out_format,
        write_svg=write_svg, threshold=threshold, sweep=sweep,
    )


# ---------------------------------------------------------------------------
# output helpers

def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_table(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(path: Path, payload) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, default=float) + "\n",
        encoding="utf-8")


def write_records(path_base: Path, fmt: str, header: list[str], rows) -> Path:
    if fmt == "csv":
        path = path_base.with_suffix(".csv")
        write_table(path, header, rows)
    else:
        path = path_base.with_suffix(".json")
        write_json(path, [dict(zip(header, row)) for row in rows])
    return path


def svg_line_plot(path: Path, times, series: dict[str, np.ndarray],
                  log_x: bool) -> None:
    """Write a minimal deterministic SVG line plot with one labeled
    polyline per series."""
    width, height, margin = 800.0, 500.0, 60.0
    xs = np.log10(np.asarray(times)) if log_x else np.asarray(times, dtype=float)
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo = min(float(np.min(v)) for v in series.values())
    y_hi = max(float(np.max(v)) for v in series.values())
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0
    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")

    def sx(x):
        return margin + (x - x_lo) / x_span * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y_lo) / y_span * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<line x1="{margin:.1f}" y1="{height - margin:.1f}" '
        f'x2="{width - margin:.1f}" y2="{height - margin:.1f}" stroke="black"/>',
        f'<line x1="{margin:.1f}" y1="{margin:.1f}" '
        f'x2="{margin:.1f}" y2="{height - margin:.1f}" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 15:.1f}" text-anchor="middle">'
        f'{"log10(t / s)" if log_x else "t / s"}</text>',
        f'<text x="18" y="{height / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {height / 2:.1f})">purity</text>',
    ]
    for i, (name, values) in enumerate(series.items()):
        pts = " ".join(f"{sx(x):.2f},{sy(float(y)):.2f}"
                       for x, y in zip(xs, values))
        color = colors[i % len(colors)]
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'data-series="{name}" points="{pts}"/>')
        parts.append(f'<text x="{width - margin - 220:.1f}" '
                     f'y="{margin + 18 * (i + 1):.1f}" fill="{color}">{name}</text>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# commands

def _rates_payload(cfg: RunConfig) -> dict:
    m = to_model(cfg.physical)
    rates = bath.rates_from_model(m, cfg.quadrature)
    _, ratio = dissipation_rate_conventional(cfg.physical)
    hbar_ratio = (CODATA2018.reduced_planck * rates.relaxation /
                  (CODATA2018.boltzmann * cfg.physical.splitting))
    return {
        "relaxation_rate_per_s": rates.relaxation,
        "pump_rate_per_s": rates.pump,
        "frequency_shift_rad_per_s": rates.shift,
        "hbar_relaxation_over_splitting": hbar_ratio,
        "zero_temperature_ratio": ratio,
        "cutoff_rad_per_s": m.cutoff,
        "shorttime_amplitude": m.shorttime_amplitude,
    }


def cmd_rates(cfg: RunConfig) -> None:
    payload = _rates_payload(cfg)
    width = max(len(k) for k in payload)
    for key, value in payload.items():
        print(f"{key:<{width}}  {value:.12e}")
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = write_records(cfg.out_dir / "rates", cfg.out_format,
                         list(payload), [list(payload.values())])
    print(f"wrote {path}")


def cmd_evolve(cfg: RunConfig) -> None:
    if cfg.grid is None:
        raise ConfigError("evolve requires a 'grid' section")
    m = to_model(cfg.physical)
    rates = bath.rates_from_model(m, cfg.quadrature)
    times = cfg.grid.build()
    s0 = BlochState(x=cfg.initial_state.x, y=cfg.initial_state.y,
                    z=cfg.initial_state.z, t=float(times[0]))
    traj = markovian.evolve(s0, rates, m, times, cfg.integrator)
    rows = [
        (s.t, s.x, s.y, s.z, markovian.purity(s))
        for s in traj.states
    ]
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = write_records(cfg.out_dir / "evolve", cfg.out_format,
                         ["t_s", "x", "y", "z", "purity"], rows)
    print(f"wrote {path}")


def cmd_shorttime(cfg: RunConfig) -> None:
    if cfg.grid is None:
        raise ConfigError("shorttime requires a 'grid' section")
    m = to_model(cfg.physical)
    rows = []
    for t in cfg.grid.build():
        t = float(t)
        exact = shorttime.point_exact(t, m, cfg.quadrature)
        asym_integral, _ = bath.decoherence_integral_asymptotic(t, m)
        asym = shorttime.purity_asymptotic(t, m)
        exact_integral = (exact.exponent / m.shorttime_amplitude
                          if m.shorttime_amplitude > 0 else
                          bath.decoherence_integral(t, m, cfg.quadrature))
        rows.append((t, exact.regime.value, exact_integral, asym_integral,
                     exact.exponent, exact.purity, asym.purity))
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = write_records(
        cfg.out_dir / "shorttime", cfg.out_format,
        ["t_s", "regime", "integral_exact", "integral_asymptotic",
         "exponent", "purity_exact", "purity_asymptotic"], rows)
    print(f"wrote {path}")


def cmd_compare(cfg: RunConfig) -> None:
    report = compare_approximations(
        cfg.physical, s0=cfg.initial_state, grid=cfg.grid,
        quadrature=cfg.quadrature, threshold=cfg.threshold)
    rows = [
        (float(t), pm, ps, pa, reg, d)
        for t, pm, ps, pa, reg, d in zip(
            report.times, report.purity_markovian, report.purity_shorttime,
            report.purity_shorttime_asymptotic, report.regimes, report.abs_diff)
    ]
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = write_records(
        cfg.out_dir / "compare", cfg.out_format,
        ["t_s", "purity_markovian", "purity_shorttime_exact",
         "purity_shorttime_asymptotic", "regime", "abs_diff"], rows)
    t1, t2 = report.boundary_times
    summary = {
        "markovian_limit": report.markovian_limit,
        "shorttime_limit": report.shorttime_limit,
        "boundary_time_cutoff_s": t1,
        "boundary_time_thermal_s": t2,
        "first_divergence_time_s": report.first_divergence_time,
        "threshold": report.threshold,
        "relaxation_rate_per_s": report.rates.relaxation,
        "pump_rate_per_s": report.rates.pump,
        "frequency_shift_rad_per_s": report.rates.shift,
    }
    write_json(cfg.out_dir / "compare_summary.json", summary)
    print(f"wrote {path}")
    print(f"wrote {cfg.out_dir / 'compare_summary.json'}")
    if cfg.write_svg:
        svg_path = cfg.out_dir / "compare.svg"
        svg_line_plot(
            svg_path, report.times,
            {
                "markovian": report.purity_markovian,
                "shorttime-exact": report.purity_shorttime,
                "shorttime-asymptotic": report.purity_shorttime_asymptotic,
            },
            log_x=(cfg.grid is None or cfg.grid.spacing == "logarithmic"),
        )
        print(f"wrote {svg_path}")


def _sweep_point(cfg: RunConfig, value: float):
    spec = cfg.sweep
    parameter = spec["parameter"]
    fields = {
        "dielectric_constant": cfg.physical.dielectric_constant,
        "edge_velocity": cfg.physical.edge_velocity,
        "splitting": cfg.physical.splitting,
        "temperature": cfg.physical.temperature,
        "antidot_separation": cfg.physical.antidot_separation,
        "qubit_edge_distance": cfg.physical.qubit_edge_distance,
        "filling_denominator": cfg.physical.filling_denominator,
        "bias": cfg.physical.bias,
    }
    if parameter == "filling_denominator":
        if value != int(value):
            raise ConfigError("swept filling_denominator values must be integers")
        fields[parameter] = int(value)
    else:
        fields[parameter] = value
    try:
        phys = PhysicalParams(**fields)
    except ValueError as exc:
        raise ConfigError(f"swept value {value!r} is invalid: {exc}") from exc

    record = spec["record"]
    rows = []
    if record == "gamma":
        m = to_model(phys)
        rows.append((parameter, value, "", "relaxation_rate_per_s",
                     bath.relaxation_rate(m)))
    elif record == "ratio":
        _, ratio = dissipation_rate_conventional(phys)
        rows.append((parameter, value, "", "hbar_relaxation_over_splitting", ratio))
    elif record == "purity-at-time":
        m = to_model(phys)
        rates = bath.rates_from_model(m, cfg.quadrature)
        at = spec["at_time"]
        state = markovian.closed_form(cfg.initial_state, rates, m,
                                      at - cfg.initial_state.t)
        rows.append((parameter, value, at, "purity_markovian",
                     markovian.purity(state)))
    else:  # full-curve
        report = compare_approximations(
            phys, s0=cfg.initial_state, grid=cfg.grid,
            quadrature=cfg.quadrature, threshold=cfg.threshold)
        for t, pm, ps in zip(report.times, report.purity_markovian,
                             report.purity_shorttime):
            rows.append((parameter, value, float(t), "purity_markovian", pm))
            rows.append((parameter, value, float(t), "purity_shorttime_exact", ps))
    return rows


def cmd_sweep(cfg: RunConfig, jobs: int) -> None:
    if cfg.sweep is None:
        raise ConfigError("sweep requires a 'sweep' section")
    values = cfg.sweep["values"]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(lambda v: _sweep_point(cfg, v), values))
    else:
        groups = [_sweep_point(cfg, v) for v in values]
    # deterministic assembly regardless of completion order
    ordered = [row for _, group in sorted(zip(values, groups),
                                          key=lambda pair: pair[0])
               for row in group]
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = write_records(cfg.out_dir / "sweep", cfg.out_format,
                         ["parameter", "value", "time_s", "quantity", "result"],
                         ordered)
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anyondec",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("rates", "print and write the rate coefficients"),
        ("evolve", "integrate the Bloch equations, write (t, x, y, z, purity)"),
        ("shorttime", "early-time purity table, exact and asymptotic"),
        ("compare", "side-by-side purity curves of the two approximations"),
        ("sweep", "parameter sweep, long-format output"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON configuration file")
        p.add_argument("--out", default=None,
                       help=f"output directory (default: config value, then "
                            f"${OUT_DIR_ENV}, then '.')")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="table format (default: config value, then csv)")
        if name == "sweep":
            p.add_argument("--jobs", type=int, default=1,
                           help="concurrent sweep evaluations (default: 1)")
        if name == "compare":
            p.add_argument("--threshold", type=float, default=None,
                           help="purity divergence threshold (default: 0.01)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            out_override=args.out,
            format_override=args.format,
            threshold_override=getattr(args, "threshold", None),
        )
        if args.command == "rates":
            cmd_rates(cfg)
        elif args.command == "evolve":
            cmd_evolve(cfg)
        elif args.command == "shorttime":
            cmd_shorttime(cfg)
        elif args.command == "compare":
            cmd_compare(cfg)
        elif args.command == "sweep":
            jobs = max(1, args.jobs)
            cmd_sweep(cfg, jobs)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, RangeError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except AnyondecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
