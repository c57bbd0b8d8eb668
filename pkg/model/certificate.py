"""Certificate schema and its JSON form.

A certificate is a pure function of p (and the root choice): no timestamps, keys
sorted, two-space indent and a trailing newline, so two runs are byte-identical.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from .exceptions import CertificateError


logger = logging.getLogger(__name__)

CERTIFICATE_VERSION = "1.0"
ASSUMED_IDS = frozenset({"assumed.h_maximal", "assumed.automorphism_group"})
SKIPPED = "skipped: dependency failed"

Status = Literal["pass", "fail", "assumed"]


class CheckRecord(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    id: str
    status: Status
    observed: Any = None
    expected: Any = None
    paper_ref: str

    @property
    def skipped(self) -> bool:
        return self.status == "fail" and self.observed == SKIPPED


class Summary(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    passed: int = 0
    failed: int = 0
    assumed: int = 0
    verdict: Literal["pass", "fail"]

    @classmethod
    def of(cls, checks: list[CheckRecord]) -> Summary:
        counts = {s: sum(1 for c in checks if c.status == s) for s in ("pass", "fail", "assumed")}
        return cls(
            passed=counts["pass"],
            failed=counts["fail"],
            assumed=counts["assumed"],
            verdict="fail" if counts["fail"] else "pass",
        )

    def to_json(self) -> dict[str, Any]:
        return {"pass": self.passed, "fail": self.failed, "assumed": self.assumed, "verdict": self.verdict}


class Certificate(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    version: str = CERTIFICATE_VERSION
    p: int
    field_params: dict[str, list[int]]
    checks: list[CheckRecord]
    summary: Summary

    @model_validator(mode="before")
    @classmethod
    def _read_summary(cls, data: Any) -> Any:
        # the serialized summary uses the bare status names as keys
        if isinstance(data, dict) and isinstance(data.get("summary"), dict):
            s = data["summary"]
            if "pass" in s or "fail" in s:
                data = {
                    **data,
                    "summary": {
                        "passed": s.get("pass"),
                        "failed": s.get("fail"),
                        "assumed": s.get("assumed"),
                        "verdict": s.get("verdict"),
                    },
                }
        return data

    @model_validator(mode="after")
    def _consistent(self) -> Certificate:
        if self.summary != Summary.of(self.checks):
            raise ValueError("summary does not match the check records")
        ids = [c.id for c in self.checks]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate check ids")
        for c in self.checks:
            if c.status == "assumed" and c.id not in ASSUMED_IDS:
                raise ValueError(f"check {c.id} cannot be assumed")
        if set(self.field_params) != {"a", "b", "d"}:
            raise ValueError("field_params must hold exactly a, b and d")
        return self

    @classmethod
    def build(cls, p: int, field_params: dict[str, list[int]], checks: list[CheckRecord]) -> Certificate:
        return cls(p=p, field_params=field_params, checks=checks, summary=Summary.of(checks))

    @property
    def verdict(self) -> str:
        return self.summary.verdict

    def record(self, check_id: str) -> CheckRecord:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_json(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "p": self.p,
            "field_params": self.field_params,
            "checks": [c.model_dump() for c in self.checks],
            "summary": self.summary.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_certificate(text: str) -> Certificate:
    try:
        return Certificate.model_validate(json.loads(text))
    except json.JSONDecodeError as exc:
        raise CertificateError(f"certificate is not valid JSON: {exc}") from exc
    except ValidationError as exc:
        raise CertificateError(f"certificate does not match the schema: {exc}") from exc


def emit_certificate(c: Certificate, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(c.dumps(), encoding="utf-8")
    logger.info(f"Verifier: certificate for p = {c.p} written to {path}")


def read_certificate(path: str | Path) -> Certificate:
    return parse_certificate(Path(path).read_text(encoding="utf-8"))
