"""Command-line interface.

Subcommands: ``simulate``, ``summarize``, ``example``, ``moments``,
``tune-noise``. A run is fully specified by an optional flat key=value
config file plus flag overrides (flags win); a summary JSON written by a
previous run is also accepted as a config, which reproduces that run
byte-identically. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import engine, outputs, stats
from .ballots import ProfileError
from .behavior import MODEL_NAMES, BehaviorError
from .demo import demo_profile
from .rules import RULE_NAMES, condorcet_winner, tabulate_all
from .spatial import (
    WeightsError,
    distribution_median,
    distribution_moments,
    find_weights,
    fixture_weights_path,
    load_weights,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract says 1
        raise UsageError(message)


# keys accepted in a key=value config file; values are parsed like the
# corresponding flag
_CONFIG_KEYS = {
    "weights": str,
    "state": str,
    "flavor": str,
    "candidates": int,
    "model": str,
    "elections": int,
    "voters": int,
    "seed": int,
    "workers": int,
    "out": str,
    "bins": int,
    "resample-electorate": lambda v: v.lower() in ("1", "true", "yes", "on"),
    "perception-basis": str,
    "truncation-cutoff": float,
    "abstention-cutoff": float,
    "noise-half-width": float,
    "length-probs": str,
}


def _parse_length_probs(text: str) -> tuple[tuple[int, float], ...]:
    """Parse '1:0.35,3:0.65'-style ballot-length probabilities."""
    pairs = []
    for part in text.split(","):
        length, sep, prob = part.partition(":")
        if not sep:
            raise DataError(f"bad length-probs entry {part!r}; expected length:prob")
        pairs.append((int(length), float(prob)))
    return tuple(pairs)


def _load_config_file(path: str) -> dict:
    """Read a flat key=value config, or pull the embedded config out of a
    summary JSON."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        embedded = doc.get("config", doc)
        return {"_embedded": engine.RunConfig.from_json_dict(embedded)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _CONFIG_KEYS:
            raise DataError(f"{path}:{lineno}: unknown config line {raw!r}")
        values[key] = _CONFIG_KEYS[key](value.strip())
    return values


def _resolved(args, file_values: dict, key: str, default=None):
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in file_values:
        return file_values[key]
    return default


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file or a previous summary JSON")
    parser.add_argument("--weights", help="weights CSV (default: bundled fixtures)")
    parser.add_argument("--state", help="state label(s), comma-separated")
    parser.add_argument("--flavor", choices=("bimodal", "trimodal"))
    parser.add_argument("--candidates", type=int, choices=(3, 4))
    parser.add_argument("--model", help="behavior model name(s), comma-separated")
    parser.add_argument("--elections", type=int)
    parser.add_argument("--voters", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--bins", type=int)
    parser.add_argument("--resample-electorate", action="store_true", default=None)
    parser.add_argument("--perception-basis", choices=("perceived", "true"))


def build_parser() -> _Parser:
    parser = _Parser(prog="spatialvote")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run election batches and write records + summaries")
    _add_run_flags(sim)

    summ = sub.add_parser("summarize", help="re-aggregate records, or build comparison tables")
    summ.add_argument("--records", help="records CSV to aggregate")
    summ.add_argument("--out", help="summary JSON path (default: stdout)")
    summ.add_argument("--summaries", nargs="+", help="summary JSON files to compare")
    summ.add_argument("--tables", help="output prefix for comparison CSVs")
    summ.add_argument("--rule-pair", default="irv,minimax")
    summ.add_argument("--baseline-model", default="theoretical-ideal")

    ex = sub.add_parser("example", help="tabulate the bundled demonstration profile")
    ex.add_argument("--json", action="store_true", help="machine-readable output")

    mom = sub.add_parser("moments", help="distribution moments per weights row")
    mom.add_argument("--weights")
    mom.add_argument("--state")
    mom.add_argument("--flavor", choices=("bimodal", "trimodal"))

    tune = sub.add_parser("tune-noise", help="ballot churn across a noise half-width grid")
    tune.add_argument("--weights")
    tune.add_argument("--state", default="balanced")
    tune.add_argument("--flavor", choices=("bimodal", "trimodal"), default="bimodal")
    tune.add_argument("--candidates", type=int, choices=(3, 4), default=3)
    tune.add_argument("--grid", default="0,0.07,0.14,0.21", help="comma-separated half-widths")
    tune.add_argument("--elections", type=int, default=50)
    tune.add_argument("--voters", type=int, default=engine.DEFAULT_VOTERS)
    tune.add_argument("--seed", type=int, default=0)
    tune.add_argument("--out")

    return parser


def cmd_example(args) -> int:
    profile, names = demo_profile()
    outcomes = tabulate_all(profile)
    cw = condorcet_winner(profile)
    doc = {
        "candidates": list(names),
        "ballots": profile.total_ballots,
        "condorcet_winner": names[cw] if cw is not None else None,
        "winners": {rule: names[outcomes[rule].winner] for rule in RULE_NAMES},
        "audit": {rule: outcomes[rule].audit for rule in RULE_NAMES},
    }
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    print(f"candidates: {', '.join(names)}   ballots: {profile.total_ballots}")
    for rule in RULE_NAMES:
        print(f"{rule:>10}: {names[outcomes[rule].winner]}")
    print(f" condorcet: {doc['condorcet_winner'] or 'none'}")
    print()
    print(json.dumps(doc["audit"], indent=2, sort_keys=True))
    return EXIT_OK


def _weights_rows(path: str | None):
    return load_weights(path if path else fixture_weights_path())


def _progress_printer(config):
    """Coarse stderr progress for long batches; stdout stays clean."""
    total = config.elections
    if total < 10_000:
        return None
    step = max(1, total // 20)
    last = 0

    def report(done):
        nonlocal last
        if done == total or done - last >= step:
            last = done
            print(
                f"{outputs.run_basename(config)}: {done}/{total} elections",
                file=sys.stderr,
            )

    return report


def cmd_simulate(args) -> int:
    file_values = _load_config_file(args.config) if args.config else {}

    if "_embedded" in file_values:
        base = file_values["_embedded"]
        config = base
        workers = args.workers or 1
        out_dir = args.out or "."
        records, summary = engine.run_batch(
            config, workers=workers, progress=_progress_printer(config)
        )
        rec_path, sum_path = outputs.write_run_outputs(out_dir, records, summary, config)
        print(rec_path)
        print(sum_path)
        return EXIT_OK

    rows = _weights_rows(_resolved(args, file_values, "weights"))
    states = [s for s in (_resolved(args, file_values, "state") or "").split(",") if s]
    if not states:
        raise UsageError("simulate needs --state (or a config file providing it)")
    flavor = _resolved(args, file_values, "flavor")
    if flavor is None:
        raise UsageError("simulate needs --flavor")
    k = _resolved(args, file_values, "candidates")
    if k is None:
        raise UsageError("simulate needs --candidates")
    models = [m for m in (_resolved(args, file_values, "model") or "").split(",") if m]
    if not models:
        raise UsageError("simulate needs --model")
    for model in models:
        if model not in MODEL_NAMES:
            raise DataError(
                f"unknown model {model!r}; valid models: {', '.join(MODEL_NAMES)}"
            )

    overrides = {}
    for key, field in (
        ("truncation-cutoff", "truncation_cutoff"),
        ("abstention-cutoff", "abstention_cutoff"),
        ("noise-half-width", "noise_half_width"),
    ):
        if key in file_values:
            overrides[field] = file_values[key]
    if "length-probs" in file_values:
        overrides["length_probs"] = _parse_length_probs(file_values["length-probs"])

    workers = _resolved(args, file_values, "workers", 1)
    out_dir = _resolved(args, file_values, "out", ".")
    for state in states:
        weights = find_weights(rows, state, flavor)
        for model in models:
            config = engine.make_config(
                weights,
                k,
                model,
                elections=_resolved(args, file_values, "elections", engine.DEFAULT_ELECTIONS),
                voters=_resolved(args, file_values, "voters", engine.DEFAULT_VOTERS),
                seed=_resolved(args, file_values, "seed", 0),
                resample_electorate=bool(
                    _resolved(args, file_values, "resample-electorate", False)
                ),
                bins=_resolved(args, file_values, "bins", engine.DEFAULT_BINS),
                perception_basis=_resolved(args, file_values, "perception-basis", "perceived"),
                **overrides,
            )
            records, summary = engine.run_batch(
                config, workers=workers, progress=_progress_printer(config)
            )
            rec_path, sum_path = outputs.write_run_outputs(out_dir, records, summary, config)
            print(rec_path)
            print(sum_path)
    return EXIT_OK


def cmd_summarize(args) -> int:
    did_something = False
    if args.records:
        records, config = outputs.records_from_csv(Path(args.records).read_text())
        summary = engine.aggregate(records, config)
        text = outputs.summary_to_json(summary)
        if args.out:
            Path(args.out).write_text(text)
            print(args.out)
        else:
            sys.stdout.write(text)
        did_something = True
    if args.summaries:
        if not args.tables:
            raise UsageError("--summaries needs --tables PREFIX")
        docs = [outputs.summary_from_json(Path(p).read_text()) for p in args.summaries]
        rule_pair = tuple(args.rule_pair.split(","))
        if len(rule_pair) != 2 or any(r not in RULE_NAMES for r in rule_pair):
            raise UsageError(f"--rule-pair must name two of {', '.join(RULE_NAMES)}")
        prefix = Path(args.tables)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        for suffix, text in (
            ("distances.csv", stats.rule_distance_table(docs)),
            ("rates.csv", stats.rates_moments_table(docs)),
            ("comparison.csv", stats.comparison_table(docs, rule_pair, args.baseline_model)),
        ):
            path = Path(f"{prefix}.{suffix}")
            path.write_text(text)
            print(path)
        did_something = True
    if not did_something:
        raise UsageError("summarize needs --records and/or --summaries")
    return EXIT_OK


def cmd_moments(args) -> int:
    rows = _weights_rows(args.weights)
    print("state,flavor,mean,variance,median")
    for row in rows:
        if args.state and row.state != args.state:
            continue
        if args.flavor and row.flavor != args.flavor:
            continue
        mean, variance = distribution_moments(row)
        median = distribution_median(row)
        print(f"{row.state},{row.flavor},{mean:.6f},{variance:.6f},{median:.6f}")
    return EXIT_OK


def cmd_tune_noise(args) -> int:
    rows = _weights_rows(args.weights)
    weights = find_weights(rows, args.state, args.flavor)
    try:
        grid = [float(v) for v in args.grid.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --grid value: {exc}")
    table = engine.noise_shift_table(
        weights,
        args.candidates,
        grid,
        elections=args.elections,
        voters=args.voters,
        seed=args.seed,
    )
    lines = ["half_width,changed_fraction,mean_kendall_tau"]
    for row in table:
        lines.append(
            f"{row['half_width']},{row['changed_fraction']!r},{row['mean_kendall_tau']!r}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


_COMMANDS = {
    "example": cmd_example,
    "simulate": cmd_simulate,
    "summarize": cmd_summarize,
    "moments": cmd_moments,
    "tune-noise": cmd_tune_noise,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, WeightsError, BehaviorError, ProfileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
