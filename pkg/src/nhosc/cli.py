"""Command-line front end: configuration parsing, pipeline dispatch,
fixed-format text tables and deterministic CSV/JSON export."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .analysis import (
    DEFAULT_REPORT_TOL,
    IsospectralReport,
    Remark,
    SweepResult,
    dual_params,
    duality_check,
    isospectral_report,
    sweep_frequency,
    sweep_truncation,
)
from .basis import BasisSpec, TransformParams, normalized_commutator_check
from .eig import EigensolverError, SortOrder, classify, eigenvalues, sort_spectrum
from .model import HamiltonianSpec, build_hamiltonian, variational_frequency

__all__ = [
    "Command",
    "Format",
    "ConfigError",
    "RunConfig",
    "RenderedReport",
    "TableRow",
    "parse_config",
    "run",
    "export",
    "main",
]


class Command(Enum):
    COMMUTATOR_CHECK = "commutator-check"
    SPECTRUM = "spectrum"
    TABLE_ONE = "table1"
    TABLE_TWO = "table2"
    SWEEP_W = "sweep-w"
    SWEEP_N = "sweep-n"
    DUALITY = "duality"


class Format(Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


class ConfigError(ValueError):
    """Invalid or contradictory command-line configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters; freq is always a concrete number here."""

    command: Command
    n_dim: int = 100
    scale: float = 1.0
    freq: float = 1.0
    l_coef: float = 0.0
    r_coef: float = 0.0
    a_coef: float = 1.0
    b_coef: float = 1.0
    capital_w: float | None = None
    output_path: str | None = None
    fmt: Format = Format.TEXT
    print_count: int = 50
    sweep_values: tuple[float, ...] = ()

    @property
    def params(self) -> TransformParams:
        return TransformParams(
            l_coef=self.l_coef,
            r_coef=self.r_coef,
            a_coef=self.a_coef,
            b_coef=self.b_coef,
        )

    @property
    def basis(self) -> BasisSpec:
        return BasisSpec(n_dim=self.n_dim, freq=self.freq, scale=self.scale)


@dataclass(frozen=True)
class RenderedReport:
    """Report rendered once per output format plus the structured payload."""

    text: str
    json_obj: dict
    csv_header: list[str]
    csv_rows: list[list]


@dataclass(frozen=True)
class TableRow:
    """One line of the fixed-format text table (2-decimal complex rendering)."""

    w_param: float | None
    l_or_r: float
    freq_used: float
    computed: complex
    epsilon: float
    remark: str

    def render(self) -> str:
        w_col = "-" if self.w_param is None else _fmt2(self.w_param)
        return " | ".join(
            [
                w_col,
                _fmt2(self.l_or_r),
                _fmt2(self.freq_used),
                _fmt_value(self.computed),
                _fmt2(self.epsilon),
                self.remark,
            ]
        )


class _Parser(argparse.ArgumentParser):
    # argparse normally exits the process; surface a typed error instead
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=100, help="basis truncation size")
    common.add_argument("--s", type=float, default=1.0, help="length scale")
    common.add_argument("--w", default=None, help="basis frequency, or 'auto' for the variational one")
    common.add_argument("--L", type=float, default=None)
    common.add_argument("--R", type=float, default=None)
    common.add_argument("--A", type=float, default=None)
    common.add_argument("--B", type=float, default=None)
    common.add_argument("--count", type=int, default=None, help="levels to print (default 50)")
    common.add_argument("--format", choices=[f.value for f in Format], default="text")
    common.add_argument("--out", default=None, help="write the rendered report to this path")

    cap_w = argparse.ArgumentParser(add_help=False)
    cap_w.add_argument("--W", type=float, default=None, help="table shorthand parameter")

    values = argparse.ArgumentParser(add_help=False)
    values.add_argument(
        "--values", required=True, help="comma-separated sweep axis values"
    )

    parser = _Parser(prog="nhosc", description="non-Hermitian oscillator spectra")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("commutator-check", parents=[common])
    sub.add_parser("spectrum", parents=[common])
    sub.add_parser("table1", parents=[common, cap_w])
    sub.add_parser("table2", parents=[common, cap_w])
    sub.add_parser("sweep-w", parents=[common, values])
    sub.add_parser("sweep-n", parents=[common, values])
    sub.add_parser("duality", parents=[common, cap_w])
    return parser


def _resolve_table(ns, command: Command) -> dict:
    """Apply the W-shorthand caption derivations and catch contradictions."""
    w_cap = ns.W
    if w_cap is None:
        raise ConfigError(f"{command.value} requires --W")
    if w_cap <= 0.0:
        raise ConfigError("--W must be positive")
    if command is Command.TABLE_ONE:
        for flag in ("A", "R", "B"):
            if getattr(ns, flag) is not None:
                raise ConfigError(f"--W fixes --{flag} for table1; remove --{flag}")
        l_coef = ns.L if ns.L is not None else 0.0
        coefs = dict(
            l_coef=l_coef,
            r_coef=0.0,
            a_coef=1.0,
            b_coef=math.sqrt(w_cap**2 + l_coef**2),
        )
        default_freq = w_cap
    else:
        for flag in ("A", "L", "B"):
            if getattr(ns, flag) is not None:
                raise ConfigError(f"--W fixes --{flag} for table2; remove --{flag}")
        r_coef = ns.R if ns.R is not None else 0.0
        coefs = dict(
            l_coef=0.0,
            r_coef=r_coef,
            a_coef=math.sqrt(w_cap**2 + r_coef**2),
            b_coef=1.0,
        )
        default_freq = 1.0 / w_cap
    coefs["capital_w"] = w_cap
    coefs["default_freq"] = default_freq
    return coefs


def parse_config(argv: list[str]) -> RunConfig:
    """Parse tokens into a fully resolved RunConfig (derivations and defaults applied)."""
    ns = _build_parser().parse_args(argv)
    command = Command(ns.command)

    if command in (Command.TABLE_ONE, Command.TABLE_TWO):
        derived = _resolve_table(ns, command)
    elif command is Command.DUALITY and getattr(ns, "W", None) is not None:
        # W shorthand on duality: table2 derivation when only R is given,
        # table1 derivation otherwise
        table = Command.TABLE_TWO if (ns.R is not None and ns.L is None) else Command.TABLE_ONE
        derived = _resolve_table(ns, table)
    else:
        derived = dict(
            l_coef=ns.L if ns.L is not None else 0.0,
            r_coef=ns.R if ns.R is not None else 0.0,
            a_coef=ns.A if ns.A is not None else 1.0,
            b_coef=ns.B if ns.B is not None else 1.0,
            capital_w=None,
            default_freq=1.0,
        )

    try:
        params = TransformParams(
            l_coef=derived["l_coef"],
            r_coef=derived["r_coef"],
            a_coef=derived["a_coef"],
            b_coef=derived["b_coef"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    if ns.w is None:
        freq = derived["default_freq"]
    elif ns.w == "auto":
        w_v = variational_frequency(params).w_v
        if w_v is None:
            raise ConfigError("--w auto: variational frequency undefined for these parameters")
        freq = w_v
    else:
        try:
            freq = float(ns.w)
        except ValueError as exc:
            raise ConfigError(f"--w expects a number or 'auto', got {ns.w!r}") from exc
    if freq <= 0.0:
        raise ConfigError(f"basis frequency must be positive, got {freq}")

    if ns.N < 2:
        raise ConfigError(f"--N must be >= 2, got {ns.N}")
    if ns.s <= 0.0:
        raise ConfigError(f"--s must be positive, got {ns.s}")

    if ns.count is None:
        count = min(50, ns.N)
    elif not 1 <= ns.count <= ns.N:
        raise ConfigError(f"--count must be between 1 and N={ns.N}, got {ns.count}")
    else:
        count = ns.count

    sweep_values: tuple[float, ...] = ()
    if command in (Command.SWEEP_W, Command.SWEEP_N):
        try:
            sweep_values = tuple(float(tok) for tok in ns.values.split(",") if tok)
        except ValueError as exc:
            raise ConfigError(f"--values expects comma-separated numbers, got {ns.values!r}") from exc
        if not sweep_values:
            raise ConfigError("--values must contain at least one number")
        if command is Command.SWEEP_N and any(v != int(v) or v < 2 for v in sweep_values):
            raise ConfigError("sweep-n values must be integers >= 2")

    return RunConfig(
        command=command,
        n_dim=ns.N,
        scale=ns.s,
        freq=freq,
        l_coef=params.l_coef,
        r_coef=params.r_coef,
        a_coef=params.a_coef,
        b_coef=params.b_coef,
        capital_w=derived["capital_w"],
        output_path=ns.out,
        fmt=Format(ns.format),
        print_count=count,
        sweep_values=sweep_values,
    )


# ---------------------------------------------------------------- rendering


def _fmt2(x: float) -> str:
    """Two-decimal display; integral values render bare."""
    rounded = round(x, 2)
    if rounded == int(rounded):
        return str(int(rounded))
    return f"{x:.2f}"


def _fmt_value(v: complex) -> str:
    """Compact complex rendering; imaginary part shown only if it displays nonzero."""
    im = _fmt2(abs(v.imag))
    if im == "0":
        return _fmt2(v.real)
    sign = "-" if v.imag < 0 else "+"
    return f"{_fmt2(v.real)}{sign}{im}i"


def _g17(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be exported")
    return format(float(x), ".17g")


def _json_render(obj) -> str:
    """Deterministic JSON: insertion key order, 17 significant digits, no NaN/Inf."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _g17(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_json_render(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_render(v) for v in obj) + "]"
    raise TypeError(f"cannot render {type(obj).__name__} as JSON")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return _g17(float(v))
    return str(v)


def _config_echo(config: RunConfig) -> dict:
    echo = {
        "command": config.command.value,
        "N": config.n_dim,
        "s": config.scale,
        "w": config.freq,
        "L": config.l_coef,
        "R": config.r_coef,
        "A": config.a_coef,
        "B": config.b_coef,
        "W": config.capital_w,
        "w_v": variational_frequency(config.params).w_v,
        "count": config.print_count,
    }
    if config.sweep_values:
        echo["values"] = list(config.sweep_values)
    return echo


def _remark_text(remark: Remark) -> str:
    return "iso-spectra" if remark is Remark.ISO else "No iso-spectra"


def _render_isospectral(report: IsospectralReport, config: RunConfig) -> RenderedReport:
    rows = report.rows[: config.print_count]
    if config.command is Command.TABLE_TWO:
        second_name, second_val = "R", config.r_coef
    else:
        second_name, second_val = "L", config.l_coef
    lines = [f"W | {second_name} | w | E_n -> H | eps_n | Remarks"]
    for r in rows:
        lines.append(
            TableRow(
                w_param=config.capital_w,
                l_or_r=second_val,
                freq_used=config.freq,
                computed=r.computed,
                epsilon=r.epsilon,
                remark=_remark_text(r.remark),
            ).render()
        )
    n_real = len(report.rows) - 2 * report.n_complex_pairs
    first_dev = report.first_deviation_index
    lines.append(
        f"summary: n_real={n_real} n_complex_pairs={report.n_complex_pairs} "
        f"first_deviation_index={'-' if first_dev is None else first_dev}"
    )
    json_rows = [
        {
            "level": r.level,
            "epsilon_n": r.epsilon,
            "re": r.computed.real,
            "im": r.computed.imag,
            "abs_dev": r.abs_dev,
            "remark": r.remark.value,
        }
        for r in rows
    ]
    json_obj = {
        "config": _config_echo(config),
        "rows": json_rows,
        "summary": {
            "n_real": n_real,
            "n_complex_pairs": report.n_complex_pairs,
            "first_deviation_index": first_dev,
        },
    }
    csv_rows = [
        [r.level, r.epsilon, r.computed.real, r.computed.imag, r.abs_dev, r.remark.value]
        for r in rows
    ]
    return RenderedReport(
        text="\n".join(lines),
        json_obj=json_obj,
        csv_header=["level", "epsilon_n", "re", "im", "abs_dev", "remark"],
        csv_rows=csv_rows,
    )


def _render_spectrum(config: RunConfig) -> RenderedReport:
    h = build_hamiltonian(HamiltonianSpec(params=config.params, basis=config.basis))
    spec = sort_spectrum(eigenvalues(h), SortOrder.RE_THEN_IM)
    classified = classify(spec)
    values = spec.values[: config.print_count]
    lines = ["n | E_n -> H"]
    for n, v in enumerate(values):
        lines.append(f"{n} | {_fmt_value(v)}")
    lines.append(
        f"summary: n_real={classified.n_real} n_complex_pairs={classified.n_complex}"
    )
    json_obj = {
        "config": _config_echo(config),
        "values": [{"level": n, "re": v.real, "im": v.imag} for n, v in enumerate(values)],
        "summary": {
            "n_real": classified.n_real,
            "n_complex_pairs": classified.n_complex,
        },
    }
    csv_rows = [[n, v.real, v.imag] for n, v in enumerate(values)]
    return RenderedReport(
        text="\n".join(lines),
        json_obj=json_obj,
        csv_header=["level", "re", "im"],
        csv_rows=csv_rows,
    )


def _render_commutator(config: RunConfig) -> RenderedReport:
    defect = normalized_commutator_check(config.basis, config.params)
    lines = [
        f"commutator check: N={config.n_dim} L={_fmt2(config.l_coef)} R={_fmt2(config.r_coef)}",
        f"max |diag - 1| over first {defect.n_dim - 1} entries: {defect.max_diag_deviation:.3e}",
        f"last diagonal entry: {_fmt2(defect.last_diag_entry)} (expected 1-N = {_fmt2(defect.expected_last)})",
        f"max off-diagonal magnitude: {defect.max_offdiag:.3e}",
    ]
    payload = {
        "n_dim": defect.n_dim,
        "max_diag_deviation": defect.max_diag_deviation,
        "last_diag_entry": defect.last_diag_entry,
        "expected_last": defect.expected_last,
        "max_offdiag": defect.max_offdiag,
    }
    return RenderedReport(
        text="\n".join(lines),
        json_obj={"config": _config_echo(config), "defect": payload},
        csv_header=list(payload),
        csv_rows=[list(payload.values())],
    )


def _render_duality(config: RunConfig) -> RenderedReport:
    distance = duality_check(config.params, config.basis)
    h = build_hamiltonian(HamiltonianSpec(params=config.params, basis=config.basis))
    h_norm = float(np.linalg.norm(h.entries.real))
    dual = dual_params(config.params)
    lines = [
        (
            f"duality check at N={config.n_dim}: "
            f"(L={_fmt2(config.l_coef)}, R={_fmt2(config.r_coef)}, A={_fmt2(config.a_coef)}, "
            f"B={_fmt2(config.b_coef)}, w={_fmt2(config.freq)}) vs "
            f"(L={_fmt2(dual.l_coef)}, R={_fmt2(dual.r_coef)}, A={_fmt2(dual.a_coef)}, "
            f"B={_fmt2(dual.b_coef)}, w={_fmt2(1.0 / config.freq)})"
        ),
        f"max eigenvalue multiset distance: {distance:.6e}",
        f"hamiltonian norm: {h_norm:.6e} (distance/norm = {distance / h_norm:.3e})",
    ]
    json_obj = {
        "config": _config_echo(config),
        "dual": {"L": dual.l_coef, "R": dual.r_coef, "A": dual.a_coef, "B": dual.b_coef,
                 "w": 1.0 / config.freq},
        "distance": distance,
        "h_norm": h_norm,
    }
    return RenderedReport(
        text="\n".join(lines),
        json_obj=json_obj,
        csv_header=["distance", "h_norm"],
        csv_rows=[[distance, h_norm]],
    )


def _render_sweep(result: SweepResult, config: RunConfig, axis_name: str) -> RenderedReport:
    lines = [
        f"{axis_name} | n_real | n_complex_pairs | first_deviation_index | max_abs_dev_below"
    ]
    for p in result.points:
        axis_val = int(p.axis_value) if axis_name == "N" else p.axis_value
        lines.append(
            " | ".join(
                [
                    _fmt2(float(axis_val)),
                    str(p.n_real),
                    str(p.n_complex_pairs),
                    "-" if p.first_deviation_index is None else str(p.first_deviation_index),
                    f"{p.max_abs_dev_below_first_deviation:.3e}",
                ]
            )
        )
    for axis_val, msg in result.failures:
        lines.append(f"{_fmt2(axis_val)} | failed: {msg}")
    json_obj = {
        "config": _config_echo(config),
        "points": [
            {
                axis_name: p.axis_value,
                "n_real": p.n_real,
                "n_complex_pairs": p.n_complex_pairs,
                "first_deviation_index": p.first_deviation_index,
                "max_abs_dev_below_first_deviation": p.max_abs_dev_below_first_deviation,
            }
            for p in result.points
        ],
        "failures": [{axis_name: v, "error": msg} for v, msg in result.failures],
    }
    csv_rows = [
        [
            p.axis_value,
            p.n_real,
            p.n_complex_pairs,
            p.first_deviation_index,
            p.max_abs_dev_below_first_deviation,
        ]
        for p in result.points
    ]
    return RenderedReport(
        text="\n".join(lines),
        json_obj=json_obj,
        csv_header=[
            axis_name,
            "n_real",
            "n_complex_pairs",
            "first_deviation_index",
            "max_abs_dev_below_first_deviation",
        ],
        csv_rows=csv_rows,
    )


def _execute(config: RunConfig) -> RenderedReport:
    if config.command is Command.COMMUTATOR_CHECK:
        return _render_commutator(config)
    if config.command is Command.SPECTRUM:
        return _render_spectrum(config)
    if config.command in (Command.TABLE_ONE, Command.TABLE_TWO):
        report = isospectral_report(config.params, config.basis, DEFAULT_REPORT_TOL)
        return _render_isospectral(report, config)
    if config.command is Command.DUALITY:
        return _render_duality(config)
    if config.command is Command.SWEEP_W:
        result = sweep_frequency(
            config.params, config.n_dim, list(config.sweep_values), scale=config.scale
        )
        return _render_sweep(result, config, "w")
    if config.command is Command.SWEEP_N:
        result = sweep_truncation(
            config.params,
            config.freq,
            [int(v) for v in config.sweep_values],
            scale=config.scale,
        )
        return _render_sweep(result, config, "N")
    raise ConfigError(f"unknown command {config.command!r}")


def render(report: RenderedReport, fmt: Format) -> str:
    """Render a report in the requested output format."""
    if fmt is Format.TEXT:
        return report.text + "\n"
    if fmt is Format.JSON:
        return _json_render(report.json_obj) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.csv_header)
    for row in report.csv_rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def export(report: RenderedReport, path: str, fmt: Format) -> None:
    """Write the rendered report to a file (UTF-8, LF line endings)."""
    data = render(report, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(data)


def run(config: RunConfig) -> str:
    """Execute the configured pipeline; returns the rendered report and
    writes the optional file artifact."""
    report = _execute(config)
    if config.output_path is not None:
        export(report, config.output_path, config.fmt)
    return render(report, config.fmt)


def main(argv: list[str] | None = None) -> int:
    """Console entry point.  Exit codes: 0 ok, 2 config, 3 solver, 4 I/O."""
    tokens = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(tokens)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        output = run(config)
    except EigensolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 4
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
