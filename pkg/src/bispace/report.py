"""One report model rendered as JSON (for diffs) or plain text (for people)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

COMPUTED = "computed"
MATCHED = "matched"
MISMATCHED = "mismatched"
ERROR = "error"


@dataclass
class Entry:
    op: str
    status: str
    summary: str
    result: dict = field(default_factory=dict)
    expected: Any = None
    note: str | None = None

    def to_dict(self) -> dict:
        d = {"op": self.op, "status": self.status, "summary": self.summary, "result": self.result}
        if self.expected is not None:
            d["expected"] = self.expected
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    title: str
    entries: list = field(default_factory=list)

    def add(self, entry: Entry) -> Entry:
        self.entries.append(entry)
        return entry

    @property
    def failures(self) -> list:
        return [e for e in self.entries if e.status in (MISMATCHED, ERROR)]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "entries": [e.to_dict() for e in self.entries],
            "summary": {"entries": len(self.entries), "failed": len(self.failures), "ok": self.ok},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"== {self.title} =="]
        for i, e in enumerate(self.entries, 1):
            lines.append(f"{i:>3}. [{e.status}] {e.op}: {e.summary}")
            if e.note:
                lines.append(f"     reference: {e.note}")
            if e.status == MISMATCHED:
                lines.append(f"     expected: {json.dumps(e.expected, ensure_ascii=False)}")
        verdict = "OK" if self.ok else f"{len(self.failures)} FAILED"
        lines.append(f"-- {len(self.entries)} entries, {verdict}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.to_json() if fmt == "json" else self.to_text()
