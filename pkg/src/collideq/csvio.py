"""Deterministic CSV emission.

Every file starts with ``#``-prefixed comment lines carrying the config
hash and seed, then a header row.  Floats are printed with 12 significant
digits, line endings are LF, encoding UTF-8; identical inputs always
produce identical bytes.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, Sequence


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    return f"{float(v):.12g}"


def write_csv(
    path: str,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    meta: Mapping[str, object],
) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in meta.items():
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def read_csv(path: str) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Read back a csv written by write_csv (used by tests and tooling)."""
    meta: dict[str, str] = {}
    header: list[str] = []
    rows: list[list[str]] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value
            elif not header:
                header = line.split(",")
            elif line:
                rows.append(line.split(","))
    return meta, header, rows
