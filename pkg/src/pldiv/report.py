"""Output records for the CLI: DiversityReport, StudyResult and their JSON schemas."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import metadata

from .baselines import DiversityValue


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.0.0+local"


def _jsonable(x):
    # JSON has no inf/nan; emit them as strings instead of invalid tokens
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return _jsonable(x.item())
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False)


_NUM = {"type": "number"}
_PARAMS = {"type": "object"}

METRIC_SCHEMA = {
    "type": "object",
    "required": ["metric", "value", "params"],
    "properties": {
        "metric": {"enum": ["pldiv", "vendi", "dcscore", "magarea"]},
        "value": {"type": "number", "minimum": 0},
        "params": _PARAMS,
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DiversityReport",
    "type": "object",
    "required": ["dataset_id", "n", "metrics", "timings_ms", "params_echo", "tool_version"],
    "properties": {
        "dataset_id": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "metrics": {"type": "array", "items": METRIC_SCHEMA},
        "timings_ms": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}},
        "params_echo": _PARAMS,
        "tool_version": {"type": "string"},
    },
}

STUDY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "StudyResult",
    "type": "object",
    "required": ["study", "rows", "verdicts", "summary", "params_echo", "tool_version"],
    "properties": {
        "study": {"enum": ["toy", "longtail", "pairs", "bench"]},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["case", "metric", "value", "seed"],
                "properties": {"case": {"type": "string"}, "metric": {"type": "string"},
                               "value": _NUM, "seed": {"type": "integer"}},
            },
        },
        "verdicts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["claim", "metric", "passed", "gating"],
                "properties": {"claim": {"type": "string"}, "metric": {"type": "string"},
                               "passed": {"type": "boolean"}, "gating": {"type": "boolean"}},
            },
        },
        "summary": {"type": "object"},
        "params_echo": _PARAMS,
        "tool_version": {"type": "string"},
    },
}

SYNTH_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SynthSidecar",
    "type": "object",
    "required": ["generator", "files", "n_points", "tool_version"],
    "properties": {
        "generator": {"type": "object", "required": ["name", "params", "seed"]},
        "files": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "n_points": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "tool_version": {"type": "string"},
    },
}

LANDSCAPE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "LandscapeExport",
    "type": "object",
    "required": ["n", "n_pairs", "n_levels", "t_range", "steps", "landscape_csv", "diagram_csv",
                 "pldiv", "tool_version"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "n_pairs": {"type": "integer", "minimum": 0},
        "n_levels": {"type": "integer", "minimum": 0},
        "t_range": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
        "steps": {"type": "integer", "minimum": 2},
        "landscape_csv": {"type": "string"},
        "diagram_csv": {"type": "string"},
        "pldiv": {"type": "number", "minimum": 0},
        "tool_version": {"type": "string"},
    },
}


@dataclass
class DiversityReport:
    dataset_id: str
    n: int
    metrics: list
    timings_ms: dict
    params_echo: dict
    tool_version: str = field(default_factory=tool_version)

    def value(self, metric: str) -> float:
        for m in self.metrics:
            if m.metric == metric:
                return m.value
        raise KeyError(metric)

    def as_dict(self) -> dict:
        return {
            "dataset_id": self.dataset_id,
            "n": int(self.n),
            "metrics": [m.as_dict() for m in self.metrics],
            "timings_ms": {k: float(v) for k, v in self.timings_ms.items()},
            "params_echo": dict(self.params_echo),
            "tool_version": self.tool_version,
        }

    def to_json(self) -> str:
        return dumps(self.as_dict())

    def csv_rows(self):
        yield "metric,value,time_ms"
        for m in self.metrics:
            yield f"{m.metric},{m.value!r},{self.timings_ms.get(m.metric, 0.0)!r}"


@dataclass(frozen=True)
class Verdict:
    claim: str
    metric: str
    passed: bool
    gating: bool = False  # gating verdicts decide the exit status

    def line(self) -> str:
        tag = "" if self.gating else " (informational)"
        return f"{self.metric}: {self.claim} {'pass' if self.passed else 'FAIL'}{tag}"

    def as_dict(self):
        return {"claim": self.claim, "metric": self.metric, "passed": bool(self.passed),
                "gating": bool(self.gating)}


@dataclass
class StudyResult:
    study: str
    rows: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    params_echo: dict = field(default_factory=dict)
    table: str = ""

    def add(self, case, metric, value, seed, **extra):
        self.rows.append({"case": case, "metric": metric, "value": float(value), "seed": int(seed), **extra})

    @property
    def failed(self) -> list:
        return [v for v in self.verdicts if v.gating and not v.passed]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def verdict_lines(self) -> list:
        return [v.line() for v in self.verdicts]

    def as_dict(self) -> dict:
        return {"study": self.study, "rows": self.rows, "verdicts": [v.as_dict() for v in self.verdicts],
                "summary": self.summary, "params_echo": self.params_echo, "tool_version": tool_version()}

    def to_json(self) -> str:
        return dumps(self.as_dict())


__all__ = ["DiversityValue", "DiversityReport", "StudyResult", "Verdict", "REPORT_SCHEMA",
           "STUDY_SCHEMA", "SYNTH_SCHEMA", "LANDSCAPE_SCHEMA", "tool_version", "dumps"]
