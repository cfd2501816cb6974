"""Versioned on-disk formats for records and summaries.

Record CSV (``spatialvote.records/1``): first line is a ``#`` comment
embedding the fully resolved run config as JSON, then a header row and one
row per election. Floats are written with ``repr`` so they round-trip
exactly; re-aggregating a record file therefore reproduces the original
summary byte for byte.

Summary JSON (``spatialvote.summary/1``): the aggregate dictionary from
``engine.aggregate``, serialized with sorted keys and a fixed indent.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Sequence

from .engine import ElectionRecord, RunConfig
from .rules import RULE_NAMES

RECORDS_SCHEMA = "spatialvote.records/1"
SUMMARY_SCHEMA = "spatialvote.summary/1"

_BASE_COLUMNS = [
    "index",
    "degenerate",
    "median_voter",
    "condorcet_exists",
    "bullet_rate",
    "abstention_rate",
]


def record_columns() -> list[str]:
    cols = list(_BASE_COLUMNS)
    for rule in RULE_NAMES:
        cols += [f"{rule}_winner", f"{rule}_position", f"{rule}_distance"]
    return cols


def records_to_csv(records: Iterable[ElectionRecord], config: RunConfig) -> str:
    buf = io.StringIO()
    buf.write(f"# {RECORDS_SCHEMA} config={json.dumps(config.to_json_dict(), sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(record_columns())
    for r in records:
        row = [
            r.index,
            int(r.degenerate),
            repr(r.median_voter),
            int(r.condorcet_exists),
            repr(r.bullet_rate),
            repr(r.abstention_rate),
        ]
        for rule in RULE_NAMES:
            if r.degenerate:
                row += ["", "", ""]
            else:
                row += [
                    r.winner_index[rule],
                    repr(r.winner_position[rule]),
                    repr(r.winner_distance[rule]),
                ]
        writer.writerow(row)
    return buf.getvalue()


def records_from_csv(text: str) -> tuple[list[ElectionRecord], RunConfig]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"# {RECORDS_SCHEMA} config="):
        raise ValueError(f"not a {RECORDS_SCHEMA} file")
    config = RunConfig.from_json_dict(
        json.loads(lines[0].split("config=", 1)[1])
    )
    reader = csv.reader(lines[1:])
    header = next(reader, None)
    if header != record_columns():
        raise ValueError("record CSV header does not match schema")
    records = []
    for row in reader:
        if not row:
            continue
        cells = dict(zip(record_columns(), row))
        degenerate = bool(int(cells["degenerate"]))
        winner_index: dict[str, int] = {}
        winner_position: dict[str, float] = {}
        winner_distance: dict[str, float] = {}
        if not degenerate:
            for rule in RULE_NAMES:
                winner_index[rule] = int(cells[f"{rule}_winner"])
                winner_position[rule] = float(cells[f"{rule}_position"])
                winner_distance[rule] = float(cells[f"{rule}_distance"])
        records.append(
            ElectionRecord(
                index=int(cells["index"]),
                degenerate=degenerate,
                median_voter=float(cells["median_voter"]),
                condorcet_exists=bool(int(cells["condorcet_exists"])),
                bullet_rate=float(cells["bullet_rate"]),
                abstention_rate=float(cells["abstention_rate"]),
                winner_index=winner_index,
                winner_position=winner_position,
                winner_distance=winner_distance,
            )
        )
    return records, config


def summary_to_json(summary: dict) -> str:
    return json.dumps(summary, sort_keys=True, indent=2) + "\n"


def summary_from_json(text: str) -> dict:
    summary = json.loads(text)
    if summary.get("schema") != SUMMARY_SCHEMA:
        raise ValueError(f"not a {SUMMARY_SCHEMA} document")
    return summary


def run_basename(config: RunConfig) -> str:
    """Stem encoding the run tuple: state_flavor_kcands_model_seed."""
    return (
        f"{config.state}_{config.flavor}_{config.k}cands_"
        f"{config.model}_{config.seed}"
    )


def write_run_outputs(
    out_dir: str | Path,
    records: Sequence[ElectionRecord],
    summary: dict,
    config: RunConfig,
) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = run_basename(config)
    records_path = out / f"{stem}.records.csv"
    summary_path = out / f"{stem}.summary.json"
    records_path.write_text(records_to_csv(records, config))
    summary_path.write_text(summary_to_json(summary))
    return records_path, summary_path
