"""Tabular reports rendered as TSV with a '#' metadata header."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence


def cell(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (tuple, list)):
        if x and isinstance(x[0], (tuple, list)):
            return ";".join(cell(r) for r in x)
        return ",".join(str(v) for v in x)
    if x is None:
        return "-"
    return str(x)


@dataclass
class Report:
    title: str
    columns: Sequence[str]
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)  # (check, location, detail)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, *row) -> None:
        self.rows.append(tuple(row))

    def fail(self, check: str, location: Any, detail: Any = "") -> None:
        self.failures.append((check, cell(location), cell(detail)))

    def to_tsv(self, meta: dict | None = None) -> str:
        lines = [f"# {self.title}"]
        for k, v in (meta or {}).items():
            lines.append(f"# {k}: {v}")
        lines += [f"# note: {n}" for n in self.notes]
        lines.append("\t".join(self.columns))
        lines += ["\t".join(cell(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    def failures_tsv(self) -> str:
        out = [f"{self.title}\t{c}\t{loc}\t{d}" for c, loc, d in self.failures]
        return "\n".join(out) + ("\n" if out else "")
