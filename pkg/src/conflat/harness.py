"""Suite runner: validated JSON config in, versioned JSON report out."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from .checks import CHECKS, SUITES, CheckRecord, Context, run_check
from .clifford import MAX_DIM
from .kernels import HOPF_DEPTH, default_truncation

__all__ = [
    "SCHEMA_VERSION",
    "DEFAULT_SEED",
    "CONFIG_SCHEMA",
    "REPORT_SCHEMA",
    "ConfigError",
    "VerificationReport",
    "resolve_seed",
    "validate_config",
    "run_suite",
]

SCHEMA_VERSION = "1.0"
DEFAULT_SEED = 0xC1F0
SEED_ENV = "CONFLAT_SEED"

CONFIG_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "suite": {"enum": sorted(SUITES)},
        "checks": {"type": "array", "items": {"enum": sorted(CHECKS)}, "uniqueItems": True},
        "seed": {"type": "integer", "minimum": 0},
        "timings": {"type": "boolean"},
    },
}

_RECORD_SCHEMA = {
    "type": "object",
    "required": ["check_id", "criterion", "value", "tolerance", "verdict"],
    "properties": {
        "check_id": {"type": "string"},
        "criterion": {"type": "integer", "minimum": 1},
        "value": {"type": ["number", "string", "null"]},
        "tolerance": {"type": ["number", "null"]},
        "verdict": {"enum": ["pass", "fail", "error", "info"]},
        "kernel": {"type": ["object", "null"]},
        "details": {"type": "object"},
        "runtime_s": {"type": "number"},
    },
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "suite", "seed", "environment", "summary", "checks"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "suite": {"type": "string"},
        "seed": {"type": "integer"},
        "environment": {"type": "object"},
        "summary": {
            "type": "object",
            "required": ["verdict", "counts"],
            "properties": {"verdict": {"enum": ["pass", "fail"]}, "counts": {"type": "object"}},
        },
        "checks": {"type": "array", "items": _RECORD_SCHEMA},
    },
}


class ConfigError(ValueError):
    """Config violates the schema; `pointer` locates the offending field."""

    def __init__(self, message: str, pointer: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def validate_config(config: Any) -> None:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ConfigError(e.message, _pointer(e.absolute_path))


def resolve_seed(config_seed: int | None = None) -> int:
    """CONFLAT_SEED wins over the config, which wins over the default."""
    env = os.environ.get(SEED_ENV)
    if env:
        return int(env, 0)
    return DEFAULT_SEED if config_seed is None else int(config_seed)


def environment_stamp() -> dict:
    return {
        "max_dim": MAX_DIM,
        "truncation_defaults": {f"k={k}": default_truncation(k).radius for k in (1, 2, 3)},
        "hopf_depth": HOPF_DEPTH,
    }


@dataclass
class VerificationReport:
    suite: str
    seed: int
    records: list[CheckRecord] = field(default_factory=list)
    timings: bool = False

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "error": 0, "info": 0}
        for r in self.records:
            out[r.verdict] += 1
        return out

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "environment": environment_stamp(),
            "summary": {"verdict": "pass" if self.passed else "fail", "counts": self.counts},
            "checks": [r.to_dict(self.timings) for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def run_suite(config: dict) -> VerificationReport:
    """Validate the config and run its checks in check-id order."""
    validate_config(config)
    suite = config.get("suite", "default")
    groups = sorted(config.get("checks") or SUITES[suite])
    ctx = Context(seed=resolve_seed(config.get("seed")))
    report = VerificationReport(suite, ctx.seed, timings=bool(config.get("timings", False)))
    for g in groups:
        report.records.extend(run_check(g, ctx))
    jsonschema.validate(report.to_dict(), REPORT_SCHEMA)
    return report
