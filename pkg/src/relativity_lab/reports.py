"""Report assembly and emission: text, JSON and CSV sweep files."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Sequence

import jsonschema
import pandas as pd

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("eps", "kappa_true_sim", "kappa_true_formula", "kappa_local")

REPORT_SCHEMA: Mapping[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["config", "results", "assertions", "verdict"],
    "properties": {
        "command": {"type": "string"},
        "config": {"type": "object"},
        "results": {"type": "object"},
        "assertions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "max_deviation", "tolerance", "pass"],
                "properties": {
                    "name": {"type": "string"},
                    "max_deviation": {"type": "number"},
                    "tolerance": {"type": "number"},
                    "pass": {"type": "boolean"},
                    "mode": {"enum": ["within", "exceeds"]},
                },
            },
        },
        "verdict": {"enum": ["PASS", "FAIL"]},
    },
}


@dataclass(frozen=True)
class Assertion:
    """A named numeric check.

    ``within`` passes when the deviation is at most the tolerance; ``exceeds`` passes
    when the observed value is strictly above the threshold stored in ``tolerance``.
    """

    name: str
    max_deviation: float
    tolerance: float
    mode: str = "within"

    @property
    def passed(self) -> bool:
        if self.mode == "exceeds":
            return self.max_deviation > self.tolerance
        return self.max_deviation <= self.tolerance

    @classmethod
    def within(cls, name: str, deviation: float, tolerance: float) -> "Assertion":
        return cls(name, float(deviation), float(tolerance), "within")

    @classmethod
    def exceeds(cls, name: str, value: float, threshold: float) -> "Assertion":
        return cls(name, float(value), float(threshold), "exceeds")

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "mode": self.mode,
        }


@dataclass
class Report:
    command: str
    config: Mapping[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    assertions: List[Assertion] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(assertion.passed for assertion in self.assertions)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def check(self, name: str, deviation: float, tolerance: float) -> Assertion:
        assertion = Assertion.within(name, deviation, tolerance)
        self.assertions.append(assertion)
        return assertion

    def check_exceeds(self, name: str, value: float, threshold: float) -> Assertion:
        assertion = Assertion.exceeds(name, value, threshold)
        self.assertions.append(assertion)
        return assertion

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "config": dict(self.config),
            "results": self.results,
            "assertions": [assertion.as_dict() for assertion in self.assertions],
            "verdict": self.verdict,
        }


def relative_deviation(actual: float, expected: float, floor: float = 1.0) -> float:
    """``|actual - expected|`` relative to ``max(|expected|, floor)``."""

    return abs(actual - expected) / max(abs(expected), floor)


def validate_report(payload: Mapping[str, Any]) -> None:
    jsonschema.validate(instance=payload, schema=REPORT_SCHEMA)


def render_json(report: Report) -> str:
    payload = report.as_dict()
    validate_report(payload)
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _flatten(prefix: str, value: Any) -> Iterable[tuple[str, Any]]:
    if isinstance(value, Mapping):
        for key, item in value.items():
            yield from _flatten(f"{prefix}.{key}" if prefix else str(key), item)
    elif isinstance(value, (list, tuple)):
        for position, item in enumerate(value):
            yield from _flatten(f"{prefix}[{position}]", item)
    else:
        yield prefix, value


def render_text(report: Report) -> str:
    lines = [f"command: {report.command}", f"verdict: {report.verdict}", "", "[config]"]
    lines.extend(f"  {key} = {_format_value(value)}" for key, value in _flatten("", report.config))
    lines.append("")
    lines.append("[results]")
    lines.extend(f"  {key} = {_format_value(value)}" for key, value in _flatten("", report.results))
    lines.append("")
    lines.append("[assertions]")
    for assertion in report.assertions:
        relation = ">" if assertion.mode == "exceeds" else "<="
        status = "PASS" if assertion.passed else "FAIL"
        lines.append(
            f"  {status} {assertion.name}: {_format_value(assertion.max_deviation)} {relation} "
            f"{_format_value(assertion.tolerance)}"
        )
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"Unknown report format {fmt!r}; expected 'text' or 'json'.")


def write_report(report: Report, path: str | Path, fmt: str = "json") -> Path:
    """Write the rendered report to ``path``, creating parent folders as needed."""

    path_obj = Path(path)
    path_obj.parent.mkdir(parents=True, exist_ok=True)
    path_obj.write_text(render(report, fmt), encoding="utf-8")
    logger.info("Report saved: %s", path_obj)
    return path_obj


def write_sweep(frame: pd.DataFrame, path: str | Path) -> Path:
    """Write a kappa sweep with the fixed column order and shortest round-trip floats."""

    missing = [column for column in SWEEP_COLUMNS if column not in frame.columns]
    if missing:
        raise KeyError(f"Sweep frame is missing column(s): {', '.join(missing)}")
    path_obj = Path(path)
    path_obj.parent.mkdir(parents=True, exist_ok=True)
    frame.loc[:, list(SWEEP_COLUMNS)].to_csv(path_obj, index=False, lineterminator="\n")
    logger.info("Sweep saved: %s (%d rows)", path_obj, len(frame))
    return path_obj


def read_sweep(path: str | Path) -> pd.DataFrame:
    path_obj = Path(path)
    if not path_obj.exists():
        raise FileNotFoundError(f"Sweep file not found: {path_obj}")
    frame = pd.read_csv(path_obj, float_precision="round_trip")
    if tuple(frame.columns) != SWEEP_COLUMNS:
        raise ValueError(f"Unexpected sweep header {tuple(frame.columns)!r}; expected {SWEEP_COLUMNS!r}.")
    return frame


def sweep_frame(rows: Sequence[Mapping[str, float]]) -> pd.DataFrame:
    frame = pd.DataFrame.from_records(list(rows), columns=list(SWEEP_COLUMNS))
    return frame.sort_values("eps", kind="mergesort").reset_index(drop=True)


__all__ = [
    "Assertion",
    "REPORT_SCHEMA",
    "Report",
    "SWEEP_COLUMNS",
    "read_sweep",
    "relative_deviation",
    "render",
    "render_json",
    "render_text",
    "sweep_frame",
    "validate_report",
    "write_report",
    "write_sweep",
]
