"""Command line: verify, eval, converge.

Exit status: 0 all checks pass, 1 some check failed or errored,
2 bad input (config, spec, vectors).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .clifford import SingularError, blade_name
from .convergence import convergence_study
from .harness import ConfigError, run_suite
from .kernels import KernelSpec, kernel_batch


def _vector(text: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}") from exc


def _radii(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from exc


def _load_json(text: str):
    """Inline JSON, or a path to a JSON file."""
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(text)
    return json.loads(Path(text).read_text())


def _spec(text: str) -> KernelSpec:
    try:
        return KernelSpec.from_dict(_load_json(text))
    except (ValueError, TypeError, OSError) as exc:
        raise argparse.ArgumentTypeError(f"bad kernel spec: {exc}") from exc


def _fit(v: np.ndarray, dim: int) -> np.ndarray:
    if len(v) > dim:
        raise ValueError(f"vector of length {len(v)} does not fit in dimension {dim}")
    out = np.zeros(dim)
    out[: len(v)] = v
    return out


def _ambient(spec: KernelSpec) -> int:
    return spec.n + 1 if spec.family in ("sphere_cauchy", "sphere_green", "rp") else spec.n


def cmd_verify(args) -> int:
    config = _load_json(args.config) if args.config else {}
    if not isinstance(config, dict):
        print("error: /: config must be a JSON object", file=sys.stderr)
        return 2
    if args.suite:
        config = {**config, "suite": args.suite}
    try:
        report = run_suite(config)
    except ConfigError as exc:
        print(f"error: config {exc}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_json())
    for r in report.records:
        print(f"{r.verdict.upper():5s} {r.check_id}")
    if not args.no_figures:
        from .plotting import report_figure

        report_figure(report.records, out.with_suffix(".png"))
    counts = report.counts
    print(f"{report.suite}: {counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['error']} error, {counts['info']} info -> {out}")
    return 0 if report.passed else 1


def cmd_eval(args) -> int:
    spec = args.spec
    d = _ambient(spec)
    x, y = _fit(args.x, d), _fit(args.y, d)
    value = np.asarray(kernel_batch(spec)(x[None], y))[0]
    cols = np.flatnonzero(value) if np.any(value) else np.array([0])
    print(",".join(blade_name(int(c)) for c in cols))
    print(",".join(repr(float(value[c])) for c in cols))
    return 0


def cmd_converge(args) -> int:
    spec = args.spec
    d = _ambient(spec)
    table = convergence_study(spec, _fit(args.x, d), _fit(args.y, d), args.radii)
    text = table.to_csv()
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        if not args.no_figures:
            from .plotting import convergence_figure

            convergence_figure(table, out.with_suffix(".png"))
    sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conflat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite and write a JSON report")
    v.add_argument("--suite", help="suite name (overrides the config)")
    v.add_argument("--config", help="config JSON (path or inline)")
    v.add_argument("--out", required=True, help="report path; a .png summary is written beside it")
    v.add_argument("--no-figures", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate a kernel at one point pair")
    e.add_argument("--spec", required=True, type=_spec, help="KernelSpec JSON (path or inline)")
    e.add_argument("--x", required=True, type=_vector)
    e.add_argument("--y", required=True, type=_vector)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("converge", help="kernel value against truncation radius, as CSV")
    c.add_argument("--spec", required=True, type=_spec)
    c.add_argument("--x", required=True, type=_vector)
    c.add_argument("--y", required=True, type=_vector)
    c.add_argument("--radii", required=True, type=_radii, help="e.g. 10,20,40,80")
    c.add_argument("--out", help="CSV path; a .png plot is written beside it")
    c.add_argument("--no-figures", action="store_true")
    c.set_defaults(func=cmd_converge)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, SingularError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
