"""Experiment reports: validation, the 4-sigma frequency test, and
byte-stable JSON/CSV serialization.

Outcome labels may carry a channel prefix ("frame/blue", "nyes/2"); the
analytic probabilities of each channel must form a distribution, and each
channel records exactly one event per trial.  Serialization is fully
deterministic: fixed key order, floats printed with 17 significant digits,
'\\n' line endings, UTF-8.  ``runtime_ms`` is serialized as null so that
identical configurations produce byte-identical files; wall time is
reported on stderr by the CLI instead.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Mapping

__all__ = [
    "TestResult",
    "ExperimentReport",
    "frequency_test",
    "empirical_from_counts",
    "report_to_json_bytes",
    "report_to_csv_bytes",
]

_CHANNEL_SUM_TOL = 1e-9


def channel_of(label: str) -> str:
    return label.split("/", 1)[0] if "/" in label else ""


@dataclass(frozen=True)
class TestResult:
    """One check: pass/fail with the statistic and threshold that decided it."""

    __test__ = False  # not a pytest class despite the name

    name: str
    statistic: float
    threshold: float
    passed: bool


@dataclass(frozen=True, eq=False)
class ExperimentReport:
    """Analytic probabilities, empirical frequencies, and test verdicts of one run."""

    experiment: str
    seed: int
    trials: int
    parameters: dict
    analytic: dict[str, float]
    empirical: dict[str, float]
    tests: tuple[TestResult, ...]

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if set(self.analytic) != set(self.empirical):
            raise ValueError("analytic and empirical labels differ")
        sums: dict[str, float] = {}
        for label, p in self.analytic.items():
            if p < -_CHANNEL_SUM_TOL or p > 1.0 + _CHANNEL_SUM_TOL:
                raise ValueError(f"analytic probability out of range: {label} = {p}")
            sums[channel_of(label)] = sums.get(channel_of(label), 0.0) + p
        for channel, total in sums.items():
            if abs(total - 1.0) > _CHANNEL_SUM_TOL:
                name = channel or "<default>"
                raise ValueError(
                    f"analytic probabilities of channel {name} sum to {total!r}")

    @property
    def all_passed(self) -> bool:
        return all(t.passed for t in self.tests)


def empirical_from_counts(counts: Mapping[str, int], trials: int) -> dict[str, float]:
    """Frequencies count/trials; every channel must record exactly ``trials`` events."""
    sums: dict[str, int] = {}
    for label, c in counts.items():
        if c < 0:
            raise ValueError(f"negative count for {label}")
        sums[channel_of(label)] = sums.get(channel_of(label), 0) + c
    for channel, total in sums.items():
        if total != trials:
            name = channel or "<default>"
            raise ValueError(
                f"channel {name} recorded {total} events over {trials} trials")
    return {label: c / trials for label, c in counts.items()}


def frequency_test(counts: Mapping[str, int], probs: Mapping[str, float],
                   trials: int) -> list[TestResult]:
    """Per-cell binomial check: |freq − p| <= 4·sqrt(p(1−p)/N).

    Cells with p = 0 pass only when they were never hit.
    """
    total = sum(counts.get(label, 0) for label in probs)
    expected = trials * len({channel_of(label) for label in probs})
    if total != expected:
        raise ValueError(f"counts sum to {total}, expected {expected}")
    results = []
    for label, p in probs.items():
        count = counts.get(label, 0)
        freq = count / trials
        if p <= 0.0:
            results.append(TestResult(f"freq[{label}] empty cell", float(count), 0.0,
                                      count == 0))
        else:
            bound = 4.0 * math.sqrt(p * (1.0 - p) / trials)
            dev = abs(freq - p)
            results.append(TestResult(f"freq[{label}] within 4 sigma", dev, bound,
                                      dev <= bound))
    return results


def _format_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"reports must contain finite numbers, got {x}")
    return f"{x:.17g}"


def _write_json(obj, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, (bool, int, float)):
        out.append(_format_number(obj))
    elif isinstance(obj, Mapping):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}  {json.dumps(str(key), ensure_ascii=False)}: ")
            _write_json(value, out, indent + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad + "  ")
            _write_json(value, out, indent + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} in a report")


def _report_payload(report: ExperimentReport, version: str) -> dict:
    return {
        "experiment": report.experiment,
        "seed": report.seed,
        "trials": report.trials,
        "parameters": report.parameters,
        "analytic": report.analytic,
        "empirical": report.empirical,
        "tests": [
            {"name": t.name, "statistic": t.statistic, "threshold": t.threshold,
             "pass": t.passed}
            for t in report.tests
        ],
        # Wall time varies between runs; pinned to null so identical configs
        # give byte-identical files.
        "runtime_ms": None,
        "version": version,
    }


def report_to_json_bytes(report: ExperimentReport, version: str) -> bytes:
    out: list[str] = []
    _write_json(_report_payload(report, version), out, 0)
    out.append("\n")
    return "".join(out).encode("utf-8")


def report_to_csv_bytes(report: ExperimentReport) -> bytes:
    """Flatten outcome labels into (label, analytic, empirical) rows."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "analytic", "empirical"])
    for label, p in report.analytic.items():
        writer.writerow([label, _format_number(float(p)),
                         _format_number(float(report.empirical[label]))])
    return buf.getvalue().encode("utf-8")
