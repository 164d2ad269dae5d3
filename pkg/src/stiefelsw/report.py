"""Machine-readable command reports."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    OK = "ok"
    VIOLATION = "violation"
    HYPOTHESIS_UNMET = "hypothesis_unmet"
    BUDGET_EXCEEDED = "budget_exceeded"

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "violation": 1}.get(self.value, 2)


@dataclass
class Report:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    status: Status = Status.OK

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "status": self.status.value,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Report:
        return cls(data["command"], data["parameters"], data["results"], Status(data["status"]))

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))
