"""Command-line runner: execute a named experiment, print the per-test
verdicts, and serialize the report.

All input is explicit flags; environment variables are never consulted.
Identical configurations produce byte-identical report files.  Angles are
given in degrees and converted to radians exactly once, inside the
drivers.

Exit codes: 0 all tests passed, 1 at least one test failed, 2 unknown
experiment, 3 invalid parameters, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from math import sqrt

from . import __version__
from .experiments import EXPERIMENTS, ExperimentDef, ParamSpec, list_experiments
from .report import ExperimentReport, report_to_csv_bytes, report_to_json_bytes

__all__ = ["main", "RunConfig", "build_parser",
           "EXIT_OK", "EXIT_TEST_FAILED", "EXIT_UNKNOWN_EXPERIMENT",
           "EXIT_BAD_PARAMS", "EXIT_IO"]

EXIT_OK = 0
EXIT_TEST_FAILED = 1
EXIT_UNKNOWN_EXPERIMENT = 2
EXIT_BAD_PARAMS = 3
EXIT_IO = 4

_MAX_SEED = (1 << 64) - 1


class ParamError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Fully validated invocation of one experiment."""

    experiment: str
    seed: int
    trials: int
    params: dict
    fmt: str
    out: str | None


def _parse_floats(raw: str, count: int, name: str) -> tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != count:
        raise ParamError(f"{name} needs {count} comma-separated values, got {raw!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ParamError(f"{name}: {exc}") from None


def _parse_param(spec: ParamSpec, raw: str):
    if spec.kind == "vector3":
        values = _parse_floats(raw, 3, spec.name)
        norm = sqrt(sum(v * v for v in values))
        if norm < 1e-12:
            raise ParamError(f"{spec.name} must be a nonzero vector")
        # Explicit renormalization: CLI input is user-facing, the normalized
        # values are what the report records.
        return tuple(v / norm for v in values)
    if spec.kind == "angles":
        return _parse_floats(raw, spec.count, spec.name)
    if spec.kind == "choice":
        if raw not in spec.choices:
            raise ParamError(f"{spec.name} must be one of {spec.choices}, got {raw!r}")
        return raw
    if spec.kind == "int":
        try:
            return int(raw)
        except ValueError:
            raise ParamError(f"{spec.name} must be an integer, got {raw!r}") from None
    if spec.kind == "axis-order":
        parts = tuple(p.strip() for p in raw.split(","))
        if sorted(parts) != ["x", "y", "z"]:
            raise ParamError(f"{spec.name} must order x,y,z, got {raw!r}")
        return parts
    raise ParamError(f"unknown parameter kind {spec.kind!r}")


def _resolve_params(exp: ExperimentDef, overrides: dict[str, str]) -> dict:
    specs = {spec.name: spec for spec in exp.params}
    unknown = set(overrides) - set(specs)
    if unknown:
        raise ParamError(
            f"unknown parameter(s) {sorted(unknown)} for {exp.name}; "
            f"valid: {sorted(specs)}")
    resolved = {name: spec.default for name, spec in specs.items()}
    for name, raw in overrides.items():
        resolved[name] = _parse_param(specs[name], raw)
    return resolved


def _parse_overrides(pairs: list[str]) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ParamError(f"--param expects KEY=VALUE, got {pair!r}")
        key, value = pair.split("=", 1)
        overrides[key.strip()] = value.strip()
    return overrides


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nogosim",
        description="Run a seeded experiment and serialize its report.")
    parser.add_argument("--experiment", help="experiment name (see --list)")
    parser.add_argument("--seed", type=int, default=1,
                        help="master seed, unsigned 64-bit (default 1)")
    parser.add_argument("--trials", type=int, default=None,
                        help="trial count (default: per-experiment)")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default="json", help="report format (default json)")
    parser.add_argument("--out", default=None,
                        help="output path (default: stdout)")
    parser.add_argument("--param", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="experiment parameter override (repeatable)")
    parser.add_argument("--list", action="store_true",
                        help="print the experiment catalog and exit")
    return parser


def _print_catalog() -> None:
    for exp in list_experiments():
        print(f"{exp.name}: {exp.summary}")
        print(f"  default trials: {exp.default_trials}")
        for spec in exp.params:
            default = spec.default
            if isinstance(default, tuple):
                default = ",".join(str(v) for v in default)
            extra = f" (one of {', '.join(spec.choices)})" if spec.choices else ""
            print(f"  --param {spec.name}=...  {spec.help}{extra} [default: {default}]")


def _emit(report: ExperimentReport, config: RunConfig) -> None:
    if config.fmt == "json":
        payload = report_to_json_bytes(report, __version__)
    else:
        payload = report_to_csv_bytes(report)
    if config.out is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        with open(config.out, "wb") as fh:
            fh.write(payload)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.list:
        _print_catalog()
        return EXIT_OK

    if not args.experiment:
        print("error: --experiment is required (or use --list)", file=sys.stderr)
        return EXIT_BAD_PARAMS
    exp = EXPERIMENTS.get(args.experiment)
    if exp is None:
        print(f"error: unknown experiment {args.experiment!r}; "
              f"known: {', '.join(EXPERIMENTS)}", file=sys.stderr)
        return EXIT_UNKNOWN_EXPERIMENT

    try:
        if not 0 <= args.seed <= _MAX_SEED:
            raise ParamError(f"seed must be in [0, 2^64), got {args.seed}")
        trials = args.trials if args.trials is not None else exp.default_trials
        if trials < 1:
            raise ParamError(f"trials must be >= 1, got {trials}")
        params = _resolve_params(exp, _parse_overrides(args.param))
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS

    config = RunConfig(exp.name, args.seed, trials, params, args.fmt, args.out)
    start = time.perf_counter()
    try:
        report = exp.runner(config.seed, config.trials, config.params)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    runtime_ms = int(round((time.perf_counter() - start) * 1000.0))

    try:
        _emit(report, config)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO

    for t in report.tests:
        verdict = "PASS" if t.passed else "FAIL"
        print(f"{verdict} {t.name}  statistic={t.statistic:.6g} "
              f"threshold={t.threshold:.6g}", file=sys.stderr)
    passed = sum(t.passed for t in report.tests)
    print(f"[nogosim] {exp.name} seed={config.seed} trials={config.trials}: "
          f"{passed}/{len(report.tests)} tests passed; runtime {runtime_ms} ms",
          file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_TEST_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
