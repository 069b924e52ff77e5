"""CSV and JSON emission, plus readers for everything the CLI writes."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO

MAGIC = "# diverge v1"


def fmt_cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def parse_cell(s: str) -> Any:
    if s == "":
        return None
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def write_csv(
    fh: TextIO,
    command: str,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    notes: Sequence[str] = (),
) -> None:
    fh.write(f"{MAGIC} {command}\n")
    for note in notes:
        fh.write(f"# {note}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_cell(x) for x in row])


@dataclass
class CsvTable:
    command: str
    notes: list[str]
    header: list[str]
    rows: list[dict]

    def column(self, name: str) -> list:
        return [r[name] for r in self.rows]


def read_csv(source) -> CsvTable:
    """Parse a CSV produced by ``write_csv`` (path or text)."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).exists()):
        text = Path(source).read_text()
    else:
        text = str(source)
    lines = text.splitlines()
    if not lines or not lines[0].startswith(MAGIC + " "):
        raise ValueError("missing '# diverge v1 <command>' header")
    command = lines[0][len(MAGIC) + 1 :].strip()
    k = 1
    notes = []
    while k < len(lines) and lines[k].startswith("#"):
        notes.append(lines[k][1:].strip())
        k += 1
    reader = csv.reader(io.StringIO("\n".join(lines[k:])))
    header = next(reader, None)
    if header is None:
        raise ValueError("missing column header")
    rows = []
    for rec in reader:
        if len(rec) != len(header):
            raise ValueError(f"row has {len(rec)} fields, expected {len(header)}")
        rows.append({h: parse_cell(v) for h, v in zip(header, rec)})
    return CsvTable(command, notes, header, rows)


def dump_json(obj: Any, fh: TextIO) -> None:
    json.dump(obj, fh, indent=2, sort_keys=True)
    fh.write("\n")
