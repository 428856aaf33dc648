"""Check reports shared by the verifiers and the command line."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "details": jsonable(self.details)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __bool__(self):
        return bool(self.passed)


def jsonable(obj: Any):
    """Convert exact values to JSON-friendly structures (numbers as exact text)."""
    if isinstance(obj, CheckReport):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    return str(obj)
