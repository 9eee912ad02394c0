"""Check reports shared by every verification suite and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = "pass"
FAIL = "fail"

REPORT_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command", "operad", "instance", "checks", "seed", "bounds"],
    "additionalProperties": True,
    "properties": {
        "command": {"type": "string"},
        "operad": {"type": ["string", "null"]},
        "instance": {"type": ["string", "null"]},
        "seed": {"type": ["integer", "null"]},
        "bounds": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "paper_ref", "status"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "paper_ref": {"type": "string"},
                    "status": {"enum": [PASS, FAIL]},
                    "counterexample": {"type": "string"},
                },
            },
        },
    },
}


@dataclass
class Check:
    name: str
    ref: str
    status: str
    counterexample: Optional[str] = None
    count: int = 0

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {"name": self.name, "paper_ref": self.ref, "status": self.status}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class Report:
    command: str
    operad: Optional[str] = None
    instance: Optional[str] = None
    seed: Optional[int] = None
    bounds: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    _open: Dict[str, Check] = field(default_factory=dict, repr=False)

    def record(self, name: str, ok: bool, witness: Any = None, ref: str = "") -> bool:
        """Fold one instance of a named check into the report.

        A check is created on first use; the first failing witness is kept.
        """
        chk = self._open.get(name)
        if chk is None:
            chk = Check(name, ref or name, PASS)
            self._open[name] = chk
            self.checks.append(chk)
        chk.count += 1
        if not ok and chk.ok:
            chk.status = FAIL
            chk.counterexample = _short(witness)
        return ok

    def extend(self, other: "Report") -> None:
        for chk in other.checks:
            mine = self._open.get(chk.name)
            if mine is None:
                self._open[chk.name] = chk
                self.checks.append(chk)
            else:
                mine.count += chk.count
                if not chk.ok and mine.ok:
                    mine.status = FAIL
                    mine.counterexample = chk.counterexample

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.ok]

    def status_of(self, name: str) -> str:
        return self._open[name].status

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "operad": self.operad,
            "instance": self.instance,
            "checks": [c.to_dict() for c in self.checks],
            "seed": self.seed,
            "bounds": dict(self.bounds),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def render(self) -> str:
        head = [self.command]
        if self.operad:
            head.append(f"operad={self.operad}")
        if self.instance:
            head.append(f"instance={self.instance}")
        if self.bounds:
            head.append(" ".join(f"{k}={v}" for k, v in sorted(self.bounds.items())))
        if self.seed is not None:
            head.append(f"seed={self.seed}")
        lines = [" ".join(head)]
        for c in self.checks:
            line = f"  [{c.status.upper()}] {c.name}"
            if c.count:
                line += f" ({c.count} instances)"
            lines.append(line)
            if c.counterexample:
                lines.append(f"      counterexample: {c.counterexample}")
        n_ok = sum(c.ok for c in self.checks)
        verdict = "PASS" if self.ok else "FAIL"
        lines.append(f"{verdict}: {n_ok}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def _short(witness: Any, limit: int = 400) -> str:
    s = witness if isinstance(witness, str) else repr(witness)
    return s if len(s) <= limit else s[: limit - 3] + "..."
