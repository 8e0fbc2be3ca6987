"""Stable-ordered reports with a text and a lossless JSON rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from .permalg import Verdict

__all__ = ["Line", "Report"]


@dataclass(frozen=True)
class Line:
    """One report entry.  Theorem-derived entries carry an axiom tag and a key."""

    predicate: str
    value: Any
    axiom: Optional[str] = None
    key: Optional[str] = None
    provenance: str = ""

    @classmethod
    def from_verdict(cls, predicate: str, v: Verdict) -> "Line":
        return cls(predicate, v.status.value, v.axiom.label, v.key, v.provenance)

    def render(self) -> str:
        text = f"{self.predicate} = {_text(self.value)}"
        if self.axiom is not None:
            text += f" [{self.axiom}; {self.key}]"
        return text


def _text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return "{" + ", ".join(_text(v) for v in value) + "}"
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=False, ensure_ascii=False)
    return str(value)


@dataclass
class Report:
    command: str
    subject: str
    lines: list = field(default_factory=list)

    def add(self, predicate: str, value, axiom=None, key=None, provenance: str = "") -> None:
        self.lines.append(Line(predicate, value, axiom, key, provenance))

    def add_verdict(self, predicate: str, v: Verdict) -> None:
        self.lines.append(Line.from_verdict(predicate, v))

    def get(self, predicate: str) -> Line:
        for line in self.lines:
            if line.predicate == predicate:
                return line
        raise KeyError(predicate)

    def to_text(self) -> str:
        head = f"{self.command}: {self.subject}"
        return "\n".join([head] + ["  " + line.render() for line in self.lines]) + "\n"

    def to_dict(self) -> dict:
        return {"command": self.command, "subject": self.subject,
                "lines": [asdict(line) for line in self.lines]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(data["command"], data["subject"], [Line(**d) for d in data["lines"]])

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()
