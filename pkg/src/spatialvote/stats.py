"""Cross-run comparison metrics and table builders.

Ratios are stored as plain floats and formatted only at the presentation
layer (three decimals in the CSV tables), so no double rounding sneaks
into chained comparisons.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Mapping, Sequence

from .rules import RULE_NAMES


def relative_difference(avg_a: float, avg_b: float) -> float:
    """(avg_a - avg_b) / avg_b: how much farther rule A's winners sit from
    the median voter than rule B's, as a fraction of B's distance."""
    if avg_b == 0:
        raise ZeroDivisionError("relative difference undefined for avg_b = 0")
    return (avg_a - avg_b) / avg_b


def relative_change(rd_from: float, rd_to: float) -> float:
    """Signed proportional change in a relative difference between models."""
    if rd_from == 0:
        raise ZeroDivisionError("relative change undefined for rd_from = 0")
    return (rd_to - rd_from) / rd_from


def embed_state(mean: float, variance: float) -> tuple[float, float]:
    """Left/right-agnostic 2D embedding of a distribution: (|mean|, variance)."""
    return abs(mean), variance


def most_moderating(averages: Mapping[str, float | None]) -> str:
    """Rule with the smallest average winner-to-median distance.

    Ties break by rule precedence: plurality, irv, minimax, bucklin, borda.
    """
    defined = [(name, averages[name]) for name in RULE_NAMES if averages.get(name) is not None]
    if not defined:
        raise ValueError("no rule has a defined average")
    return min(defined, key=lambda item: item[1])[0]


def winner_histogram(positions: Sequence[float], bins: int) -> list[int]:
    """Counts over ``bins`` uniform bins spanning [-0.5, 0.5].

    The right edge closes the last bin so 0.5 is representable; counts sum
    to the input size.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts = [0] * bins
    for x in positions:
        i = int((x + 0.5) * bins)
        counts[min(max(i, 0), bins - 1)] += 1
    return counts


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.3f}"


def rule_distance_table(summaries: Iterable[Mapping]) -> str:
    """CSV grid of average winner-to-median distances.

    One row per (state, flavor, k, rule); one column per behavior model
    present in the inputs.
    """
    from .behavior import MODEL_NAMES

    cells: dict[tuple[str, str, int, str], dict[str, float]] = {}
    models_seen = []
    for summary in summaries:
        cfg = summary["config"]
        model = cfg["model"]
        if model not in models_seen:
            models_seen.append(model)
        for rule in RULE_NAMES:
            key = (cfg["state"], cfg["flavor"], cfg["k"], rule)
            cells.setdefault(key, {})[model] = summary["avg_distance"][rule]
    models = [m for m in MODEL_NAMES if m in models_seen]
    models += [m for m in models_seen if m not in models]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["state", "flavor", "k", "rule", *models])
    for key in sorted(cells):
        state, flavor, k, rule = key
        row = [state, flavor, k, rule]
        row += [_fmt(cells[key].get(m)) for m in models]
        writer.writerow(row)
    return buf.getvalue()


def rates_moments_table(summaries: Iterable[Mapping]) -> str:
    """CSV of per-run rate medians and distribution moments."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "state",
            "flavor",
            "k",
            "model",
            "median_abstention_rate",
            "median_bullet_rate",
            "distribution_mean",
            "distribution_variance",
            "median_voter",
            "condorcet_fraction",
        ]
    )
    rows = []
    for summary in summaries:
        cfg = summary["config"]
        rows.append(
            (
                cfg["state"],
                cfg["flavor"],
                cfg["k"],
                cfg["model"],
                _fmt(summary["median_abstention_rate"]),
                _fmt(summary["median_bullet_rate"]),
                _fmt(summary["distribution_mean"]),
                _fmt(summary["distribution_variance"]),
                _fmt(summary["median_voter_mean"]),
                _fmt(summary["condorcet_fraction"]),
            )
        )
    for row in sorted(rows):
        writer.writerow(row)
    return buf.getvalue()


def comparison_rows(
    summaries: Iterable[Mapping],
    rule_pair: tuple[str, str] = ("irv", "minimax"),
    baseline_model: str = "theoretical-ideal",
) -> list[dict]:
    """Per-(state, flavor, k, model) comparison records.

    Each row carries the rule-pair relative difference, the relative change
    from the baseline model's relative difference, the symmetrized
    mean-variance embedding, and the most-moderating rule. Undefined ratios
    (zero denominators) are left as None.
    """
    rule_a, rule_b = rule_pair
    groups: dict[tuple[str, str, int], dict[str, Mapping]] = {}
    for summary in summaries:
        cfg = summary["config"]
        groups.setdefault((cfg["state"], cfg["flavor"], cfg["k"]), {})[cfg["model"]] = summary

    rows = []
    for (state, flavor, k), by_model in sorted(groups.items()):
        baseline_rd = None
        base = by_model.get(baseline_model)
        if base is not None:
            try:
                baseline_rd = relative_difference(
                    base["avg_distance"][rule_a], base["avg_distance"][rule_b]
                )
            except ZeroDivisionError:
                baseline_rd = None
        for model, summary in sorted(by_model.items()):
            avg = summary["avg_distance"]
            try:
                rd = relative_difference(avg[rule_a], avg[rule_b])
            except ZeroDivisionError:
                rd = None
            rc = None
            if baseline_rd not in (None, 0) and rd is not None and model != baseline_model:
                rc = relative_change(baseline_rd, rd)
            sym_mean, variance = embed_state(
                summary["distribution_mean"], summary["distribution_variance"]
            )
            rows.append(
                {
                    "state": state,
                    "flavor": flavor,
                    "k": k,
                    "model": model,
                    "avg_distance": dict(avg),
                    "relative_difference": rd,
                    "relative_change_from_baseline": rc,
                    "symmetrized_mean": sym_mean,
                    "variance": variance,
                    "most_moderating": most_moderating(avg),
                }
            )
    return rows


def comparison_table(
    summaries: Iterable[Mapping],
    rule_pair: tuple[str, str] = ("irv", "minimax"),
    baseline_model: str = "theoretical-ideal",
) -> str:
    """CSV rendering of comparison_rows."""
    rows = comparison_rows(summaries, rule_pair, baseline_model)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "state",
            "flavor",
            "k",
            "model",
            *[f"avg_{rule}" for rule in RULE_NAMES],
            f"rd_{rule_pair[0]}_vs_{rule_pair[1]}",
            f"rc_from_{baseline_model}",
            "symmetrized_mean",
            "variance",
            "most_moderating",
        ]
    )
    for row in rows:
        writer.writerow(
            [
                row["state"],
                row["flavor"],
                row["k"],
                row["model"],
                *[_fmt(row["avg_distance"][rule]) for rule in RULE_NAMES],
                _fmt(row["relative_difference"]),
                _fmt(row["relative_change_from_baseline"]),
                _fmt(row["symmetrized_mean"]),
                _fmt(row["variance"]),
                row["most_moderating"],
            ]
        )
    return buf.getvalue()
