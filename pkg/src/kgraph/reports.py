"""Structured verification results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
INFO = "info"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, ok: Optional[bool], detail: str = "", witness: Any = None) -> Check:
        status = SKIPPED if ok is None else (PASS if ok else FAIL)
        check = Check(name, status, detail, witness)
        self.checks.append(check)
        return check

    def note(self, name: str, detail: str, witness: Any = None) -> Check:
        """Record a finding that is neither a pass nor a failure."""
        check = Check(name, INFO, detail, witness)
        self.checks.append(check)
        return check

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "data": _jsonable(self.data),
        }

    def render(self) -> str:
        lines = [f"== {self.title} =="]
        for c in self.checks:
            tail = f": {c.detail}" if c.detail else ""
            lines.append(f"[{c.status.upper():7}] {c.name}{tail}")
        lines.append("result: " + ("OK" if self.ok else f"{len(self.failures)} failure(s)"))
        return "\n".join(lines)


def _jsonable(obj):
    """Best-effort conversion of report payloads to JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(x) for x in obj]
        return sorted(items, key=str) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)
