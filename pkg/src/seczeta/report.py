"""Serializable run reports (JSON, CSV, plain text).

Every numeric field is stored as a decimal string at the working precision
so the JSON and CSV encodings carry identical digits and a report survives
a JSON round trip unchanged.
"""
from __future__ import annotations

import csv
import io
import json
import platform
from dataclasses import asdict, dataclass, field

import mpmath

from . import __version__

SCHEMA = "seczeta.report/1"

ESTIMATE_COLUMNS = (
    "n",
    "method",
    "sum",
    "a_main",
    "bpt_correction",
    "estimate",
    "error_bound",
    "bound_kind",
    "reference",
    "matched_digits",
    "sign_flag",
)


def versions() -> dict:
    return {"seczeta": __version__, "mpmath": mpmath.__version__, "python": platform.python_version()}


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    cutoff: str = ""
    records: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    versions: dict = field(default_factory=versions)
    schema: str = SCHEMA

    def columns(self) -> list[str]:
        cols: list[str] = []
        for rec in self.records:
            for key in rec:
                if key not in cols:
                    cols.append(key)
        return cols

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def body(self) -> dict:
        """Everything except timing; bit-identical across reruns."""
        d = self.to_dict()
        d.pop("timing")
        return d

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(**d)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = self.columns()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for rec in self.records:
            writer.writerow({c: rec.get(c, "") for c in cols})
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command}  (schema {self.schema})"]
        for k, v in self.inputs.items():
            lines.append(f"  {k}: {v}")
        if self.cutoff:
            lines.append(f"  T: {self.cutoff}")
        for rec in self.records:
            lines.append("")
            for k, v in rec.items():
                lines.append(f"  {k:>16}: {v}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")
