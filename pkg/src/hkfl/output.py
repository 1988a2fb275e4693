"""Machine-readable output documents for the command-line tool.

Every command produces one OutputDocument rendered as a table, JSON or
CSV.  Identical invocations give byte-identical output: JSON is dumped
with sorted keys, CSV uses LF endings, and nothing depends on wall
time or randomness.  Counts are serialized as decimal strings so that
arbitrary-precision values survive any JSON reader.

Disagreements with published values are first-class results: they
travel as PAPER-DISCREPANCY records with a stable anchor slug, the
stated value and the computed one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class DiscrepancyRecord:
    anchor: str
    stated: str
    computed: str
    detail: str = ""
    code: str = "PAPER-DISCREPANCY"

    def to_payload(self) -> dict:
        return {"code": self.code, "anchor": self.anchor, "stated": self.stated,
                "computed": self.computed, "detail": self.detail}


def jsonable(value):
    """Map result values to JSON-safe types; ints become decimal strings."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 \
            else str(value.numerator)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return {"re": repr(value.real), "im": repr(value.imag)}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "as_fraction"):  # Q/2Z values
        return jsonable(value.as_fraction())
    return value


@dataclass
class OutputDocument:
    command: str
    parameters: dict
    result: object
    discrepancies: list = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    def to_payload(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": jsonable(self.parameters),
            "result": jsonable(self.result),
            "discrepancies": [d.to_payload() for d in self.discrepancies],
        }

    def render_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, indent=2) + "\n"

    def render_csv(self) -> str:
        """CSV of the primary section; discrepancies appended as rows."""
        sections = _sections(self.result)
        rows = sections[0][1]
        lines = [",".join(_csv_cell(c) for c in row) for row in rows]
        for rec in self.discrepancies:
            lines.append(",".join(_csv_cell(c) for c in
                                  ("PAPER-DISCREPANCY", rec.anchor, rec.stated,
                                   rec.computed, rec.detail)))
        return "\n".join(lines) + "\n"

    def render_table(self) -> str:
        out = [f"# {self.command} {_params_text(self.parameters)}"]
        for title, rows in _sections(self.result):
            if title:
                out.append(f"[{title}]")
            widths = [max(len(_text(r[i])) for r in rows) for i in range(len(rows[0]))]
            for k, row in enumerate(rows):
                out.append("  ".join(_text(c).ljust(w)
                                     for c, w in zip(row, widths)).rstrip())
                if k == 0:
                    out.append("  ".join("-" * w for w in widths))
        for rec in self.discrepancies:
            out.append(f"PAPER-DISCREPANCY [{rec.anchor}] stated={rec.stated} "
                       f"computed={rec.computed} {rec.detail}".rstrip())
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.render_json()
        if fmt == "csv":
            return self.render_csv()
        if fmt == "table":
            return self.render_table()
        raise ValueError(f"unknown format {fmt!r}")


def _params_text(params) -> str:
    return " ".join(f"{k}={_text(v)}" for k, v in sorted(params.items()))


def _text(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 \
            else str(value.numerator)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_text(v) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}:{_text(v)}" for k, v in value.items())
    return str(value)


def _csv_cell(value) -> str:
    text = _text(value)
    if any(ch in text for ch in ",\"\n"):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _dict_rows(rows):
    header = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    return [header] + [[row.get(h, "") for h in header] for row in rows]


def _sections(result):
    """(title, rows) sections for table/CSV rendering, primary first.

    A dict result yields its 'rows' entry (if any) as the primary
    table, the remaining scalars as a key/value table, and any other
    list-of-dicts entries as extra titled tables.
    """
    if isinstance(result, (list, tuple)) and result \
            and all(isinstance(r, dict) for r in result):
        return [("", _dict_rows(result))]
    if isinstance(result, dict):
        tables = {k: v for k, v in result.items()
                  if isinstance(v, (list, tuple)) and v
                  and all(isinstance(r, dict) for r in v)}
        scalars = [[k, v] for k, v in result.items() if k not in tables]
        sections = []
        if "rows" in tables:
            sections.append(("", _dict_rows(tables.pop("rows"))))
        if scalars:
            title = "summary" if sections or tables else ""
            sections.append((title, [["key", "value"]] + scalars))
        for k in sorted(tables):
            sections.append((k, _dict_rows(tables[k])))
        return sections
    return [("", [["value"], [result]])]
