"""Structured verdict records shared by every check."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Optional

VERDICTS = ("holds", "fails", "engel", "not-engel", "undetermined",
            "experimental-pass", "experimental-fail")
WITNESS_VERDICTS = ("fails", "not-engel")
PASSING = ("holds", "engel", "experimental-pass")


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    def millis(self) -> int:
        return int(round((time.perf_counter() - self.start) * 1000))


def jsonable(obj: Any) -> Any:
    """Convert nested values (scalars, tuples, sets, numpy ints) into JSON types."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    if hasattr(obj, "item") and callable(obj.item):
        return obj.item()
    return str(obj)


@dataclass
class Report:
    claim: str
    inputs: dict
    verdict: str
    witness: Optional[Any] = None
    iterations: int = 0
    millis: int = 0
    config: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.witness is not None) != (self.verdict in WITNESS_VERDICTS):
            raise ValueError(f"verdict {self.verdict!r} with witness {self.witness!r}")

    @property
    def passed(self) -> bool:
        return self.verdict in PASSING

    def to_dict(self, reproducible: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "inputs": jsonable(self.inputs),
            "verdict": self.verdict,
            "witness": jsonable(self.witness),
            "iterations": int(self.iterations),
            "millis": 0 if reproducible else int(self.millis),
            "config": jsonable(self.config),
        }
        if self.details:
            out["details"] = jsonable(self.details)
        return out

    def to_json(self, reproducible: bool = False) -> str:
        return json.dumps(self.to_dict(reproducible), sort_keys=True, separators=(",", ":"))

    def to_text(self) -> str:
        lines = [f"claim:      {self.claim}",
                 f"inputs:     {json.dumps(jsonable(self.inputs), sort_keys=True)}",
                 f"verdict:    {self.verdict}"]
        if self.witness is not None:
            lines.append(f"witness:    {json.dumps(jsonable(self.witness), sort_keys=True)}")
        lines.append(f"iterations: {self.iterations}")
        lines.append(f"millis:     {self.millis}")
        if self.config:
            lines.append(f"config:     {json.dumps(jsonable(self.config), sort_keys=True)}")
        for key, val in self.details.items():
            text = json.dumps(jsonable(val), sort_keys=True)
            if len(text) > 200:
                text = text[:197] + "..."
            lines.append(f"  {key}: {text}")
        return "\n".join(lines)
