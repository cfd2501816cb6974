"""Readers for the simulator's on-disk output schemas.

plotgen consumes the summary JSON (``spatialvote.summary/1``) and record
CSV (``spatialvote.records/1``) files exactly as written by the simulator;
it never recomputes the statistics they carry. Figures display summary
fields verbatim plus documented presentation arithmetic (ratios of
displayed averages, absolute value of the mean for the symmetric
embedding).
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

SUMMARY_SCHEMA = "spatialvote.summary/1"
RECORDS_SCHEMA = "spatialvote.records/1"


class InputError(ValueError):
    """Missing, malformed, or mutually inconsistent input files."""


def load_summary(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    if doc.get("schema") != SUMMARY_SCHEMA:
        raise InputError(f"{path}: not a {SUMMARY_SCHEMA} document")
    return doc


def load_summaries(paths) -> list[dict]:
    return [load_summary(p) for p in paths]


def load_records(path: str | Path) -> tuple[list[dict], dict]:
    """Record rows (typed) plus the embedded run config."""
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith(f"# {RECORDS_SCHEMA} config="):
        raise InputError(f"{path}: not a {RECORDS_SCHEMA} file")
    config = json.loads(lines[0].split("config=", 1)[1])
    reader = csv.DictReader(lines[1:])
    rows = []
    for raw in reader:
        row = dict(raw)
        row["index"] = int(raw["index"])
        row["degenerate"] = bool(int(raw["degenerate"]))
        row["median_voter"] = float(raw["median_voter"])
        rows.append(row)
    return rows, config


def run_label(summary: dict) -> str:
    cfg = summary["config"]
    return f"{cfg['state']}/{cfg['flavor']} k={cfg['k']} {cfg['model']}"


def check_comparable(summaries: list[dict]) -> None:
    """Comparisons require matching candidate count and flavor."""
    keys = {(s["config"]["k"], s["config"]["flavor"]) for s in summaries}
    if len(keys) > 1:
        raise InputError(
            "inputs mix incompatible runs (k, flavor): "
            + ", ".join(sorted(map(str, keys)))
        )
