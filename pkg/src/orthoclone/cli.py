"""Command-line front end.

    orthoclone params  --phi pi/4
    orthoclone clone   --phi pi/4 --input psi1
    orthoclone sweep   --phi-start 0 --phi-end pi/2 --steps 41 --out sweep.csv
    orthoclone perturb --phi pi/4 --dt 0.01,-0.01
    orthoclone verify

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 output could not be written.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from typing import Any, Sequence

import numpy as np

from . import __version__
from .analysis import clone_fidelities, perturbation, separability_report, single_clone_fidelity
from .checks import Build, verify
from .cloner import FAMILY, InputKind, InputSpec, MachineParams, check_phi, clone, input_state
from .gates import TRANSPOSED_ROTATION_PHASE

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# Magnitudes below this are double-precision noise on O(1) quantities.
ZERO_FLOOR = 1e-15

SWEEP_COLUMNS = (
    "phi",
    "input",
    "a",
    "b",
    "c",
    "theta1",
    "clone_fidelity",
    "min_pt_eig_numeric",
    "min_pt_eig_closed",
    "verdict",
)
PERTURB_COLUMNS = ("delta_theta", "f_closed", "f_simulated", "difference")
FAMILY_ONLY = "family-only"

_PI_LITERAL = re.compile(
    r"(?P<sign>[+-]?)(?:(?P<num>\d+(?:\.\d*)?|\.\d+)\s*\*?\s*)?pi(?:\s*/\s*(?P<den>\d+(?:\.\d*)?|\.\d+))?"
)


class UsageError(ValueError):
    pass


def parse_angle(text: str) -> float:
    """Parse "0.3", "pi", "pi/4", "3pi/8", "3*pi/8", "-pi/2"."""
    s = text.strip().lower()
    m = _PI_LITERAL.fullmatch(s.replace(" ", ""))
    if m:
        value = math.pi * float(m["num"] or 1.0)
        if m["den"]:
            den = float(m["den"])
            if den == 0:
                raise UsageError(f"cannot parse angle {text!r}: division by zero")
            value /= den
        return -value if m["sign"] == "-" else value
    try:
        value = float(s)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"angle must be finite, got {text!r}")
    return value


def parse_phi(text: str) -> float:
    return check_phi(parse_angle(text))


def parse_angle_list(text: str) -> list[float]:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError("empty angle list")
    return [parse_angle(t) for t in items]


def parse_inputs(text: str) -> list[InputSpec]:
    names = [t.strip().lower() for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("no inputs selected")
    kinds = set()
    for name in names:
        try:
            kind = InputKind(name)
        except ValueError:
            raise UsageError(f"unknown input {name!r}; choose from psi1..psi4") from None
        if kind is InputKind.CUSTOM:
            raise UsageError("sweep only accepts the family inputs psi1..psi4")
        kinds.add(kind)
    return [InputSpec(k) for k in FAMILY if k in kinds]


def fmt(x: float, precision: int) -> str:
    """Positional notation, ``precision`` significant digits, no negative zero."""
    x = float(x)
    if abs(x) < ZERO_FLOOR:
        return "0"
    s = np.format_float_positional(x, precision=precision, unique=False, fractional=False, trim="-")
    return "0" if s in ("-0", "0.", "-0.") else s


def _num(x: float, precision: int) -> float:
    return float(fmt(x, precision))


def _emit_table(rows: list[dict[str, Any]], columns: Sequence[str], fmt_name: str, precision: int) -> str:
    def cell(v: Any) -> Any:
        return fmt(v, precision) if isinstance(v, float) else v

    if fmt_name == "json":
        out = [{k: (_num(v, precision) if isinstance(v, float) else v) for k, v in r.items()} for r in rows]
        return json.dumps(out, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(columns)
    for r in rows:
        writer.writerow([cell(r[c]) for c in columns])
    return buf.getvalue()


def _jsonable(value: Any, precision: int) -> Any:
    if isinstance(value, float):
        return _num(value, precision)
    if isinstance(value, dict):
        return {k: _jsonable(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v, precision) for v in value]
    return value


def _emit_record(record: dict[str, Any], fmt_name: str, precision: int) -> str:
    if fmt_name == "json":
        return json.dumps(_jsonable(record, precision), indent=2) + "\n"
    flat: dict[str, Any] = {}
    for key, value in record.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                flat[f"{key}_{sub}"] = v
        elif isinstance(value, (list, tuple)):
            for i, v in enumerate(value):
                flat[f"{key}_{i}"] = v
        else:
            flat[key] = value
    return _emit_table([flat], list(flat), "csv", precision)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _input_spec(args: argparse.Namespace) -> InputSpec:
    kind = InputKind(args.input)
    if kind is InputKind.CUSTOM:
        if args.alpha is None or args.beta is None:
            raise UsageError("--input custom needs --alpha and --beta")
        return InputSpec.custom(args.alpha, args.beta)
    if args.alpha is not None or args.beta is not None:
        raise UsageError("--alpha/--beta only apply to --input custom")
    return InputSpec(kind)


def params_record(phi: float) -> dict[str, Any]:
    p = MachineParams.from_phi(phi)
    return {
        "phi": p.phi,
        "a": p.a,
        "b": p.b,
        "c": p.c,
        "theta1": p.theta1,
        "theta2": p.theta2,
        "theta3": p.theta3,
    }


def clone_record(spec: InputSpec, phi: float) -> dict[str, Any]:
    out = clone(spec, phi)
    if np.max(np.abs(out.imag)) > 1e-12:
        raise RuntimeError("unexpected complex amplitudes in the copier output")
    psi = input_state(spec, phi)
    report = separability_report(spec, phi)
    alpha, beta = psi.real
    closed = list(report.pt_eigs_closed) if report.pt_eigs_closed is not None else [FAMILY_ONLY] * 4
    return {
        "phi": float(phi),
        "input": spec.kind.value,
        "alpha": float(alpha),
        "beta": float(beta),
        "amp": {f"{k:03b}": float(out[k].real) for k in range(8)},
        "fidelity_a2": single_clone_fidelity(out, psi, "a2"),
        "fidelity_a3": single_clone_fidelity(out, psi, "a3"),
        "fidelity_a1": single_clone_fidelity(out, psi, "a1"),
        "pt_eig_numeric": list(report.pt_eigs_numeric),
        "pt_eig_closed": closed,
        "min_pt_eig_numeric": report.min_eig,
        "min_pt_eig_closed": report.min_eig_closed if report.min_eig_closed is not None else FAMILY_ONLY,
        "verdict": report.verdict.value,
    }


def sweep_phis(start: float, end: float, steps: int) -> list[float]:
    if start > end:
        raise UsageError("phi-start must not exceed phi-end")
    if steps == 1:
        return [start]
    return [start + (end - start) * k / (steps - 1) for k in range(steps)]


def sweep_rows(phis: Sequence[float], specs: Sequence[InputSpec]) -> list[dict[str, Any]]:
    rows = []
    for phi in phis:
        p = MachineParams.from_phi(phi)
        for spec in specs:
            report = separability_report(spec, phi)
            rows.append(
                {
                    "phi": p.phi,
                    "input": spec.kind.value,
                    "a": p.a,
                    "b": p.b,
                    "c": p.c,
                    "theta1": p.theta1,
                    "clone_fidelity": clone_fidelities(spec, phi)[0],
                    "min_pt_eig_numeric": report.min_eig,
                    "min_pt_eig_closed": report.min_eig_closed,
                    "verdict": report.verdict.value,
                }
            )
    return rows


def perturb_rows(phi: float, deltas: Sequence[float]) -> list[dict[str, Any]]:
    rows = []
    for dt in deltas:
        r = perturbation(phi, dt)
        rows.append(
            {
                "delta_theta": float(dt),
                "f_closed": r.f_closed,
                "f_simulated": r.f_simulated,
                "difference": r.difference,
            }
        )
    return rows


def cmd_params(args: argparse.Namespace) -> int:
    _write(_emit_record(params_record(parse_phi(args.phi)), args.format or "json", args.precision), args.out)
    return EXIT_OK


def cmd_clone(args: argparse.Namespace) -> int:
    phi = parse_phi(args.phi)
    record = clone_record(_input_spec(args), phi)
    _write(_emit_record(record, args.format or "json", args.precision), args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    specs = parse_inputs(args.inputs)
    phis = sweep_phis(parse_phi(args.phi_start), parse_phi(args.phi_end), args.steps)
    text = _emit_table(sweep_rows(phis, specs), SWEEP_COLUMNS, args.format or "csv", args.precision)
    _write(text, args.out)
    return EXIT_OK


def cmd_perturb(args: argparse.Namespace) -> int:
    phi = parse_phi(args.phi)
    rows = perturb_rows(phi, parse_angle_list(args.dt))
    _write(_emit_table(rows, PERTURB_COLUMNS, args.format or "csv", args.precision), args.out)
    return EXIT_OK


MUTATIONS = {
    "none": Build(),
    "reverse-copy-order": Build(copy_order=tuple(reversed(Build().copy_order))),
    "transposed-field-phase": Build(field_phase=TRANSPOSED_ROTATION_PHASE),
}


def cmd_verify(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    text, code = verify(MUTATIONS[args.mutate])
    _write(text + "\n", args.out)
    if code != EXIT_OK:
        print(text.splitlines()[-1], file=sys.stderr)
    print(f"verify finished in {time.perf_counter() - start:.2f} s", file=sys.stderr)
    return code


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", metavar="PATH", default=None, help="write to PATH instead of stdout")
    common.add_argument("--precision", type=_positive_int, default=9, help="significant digits (default 9)")

    parser = argparse.ArgumentParser(prog="orthoclone", description="Optimal cloning network for two pairs of orthogonal qubit states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="machine coefficients and preparation angles")
    p.add_argument("--phi", required=True, help='angle in [0, pi/2], e.g. "pi/4" or 0.3')
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("clone", parents=[common], help="run the copier on one input")
    p.add_argument("--phi", required=True)
    p.add_argument("--input", required=True, choices=[k.value for k in InputKind])
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.set_defaults(func=cmd_clone)

    p = sub.add_parser("sweep", parents=[common], help="tabulate the machine over a phi grid")
    p.add_argument("--phi-start", default="0")
    p.add_argument("--phi-end", default="pi/2")
    p.add_argument("--steps", type=_positive_int, default=41)
    p.add_argument("--inputs", default="psi1,psi2,psi3,psi4", help="comma-separated subset of psi1..psi4")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("perturb", parents=[common], help="fidelity under a common rotation-angle error")
    p.add_argument("--phi", required=True)
    p.add_argument("--dt", required=True, help="comma-separated angle errors in radians")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--mutate", choices=tuple(MUTATIONS), default="none", help="inject a known defect")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
