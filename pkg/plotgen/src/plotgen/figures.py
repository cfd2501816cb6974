"""The three figure families rendered from simulator summaries.

Each renderer returns ``(figure, data)`` where ``data`` is exactly what was
drawn, so tests can assert the displayed values against the input files.
Color conventions: the baseline series is blue, the comparison series is
red/orange.
"""

from __future__ import annotations

import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .inputs import InputError, check_comparable

BASELINE_COLOR = "tab:blue"
COMPARISON_COLOR = "tab:red"
AXIS_LO, AXIS_HI = -0.5, 0.5


def _warn(message: str) -> None:
    print(f"plotgen: {message}", file=sys.stderr)


def _relative_difference(summary: dict, rule_a: str, rule_b: str) -> float | None:
    avg = summary["avg_distance"]
    if avg[rule_b] == 0:
        return None
    return (avg[rule_a] - avg[rule_b]) / avg[rule_b]


def render_histogram_overlay(summary: dict, rules: tuple[str, str]):
    """Overlay two rules' winner-position histograms from one run.

    Counts come straight from the summary; the vertical line marks the
    median voter. First rule draws in red (comparison), second in blue
    (baseline).
    """
    rule_a, rule_b = rules
    bins = summary["histogram_bins"]
    edges = np.linspace(AXIS_LO, AXIS_HI, bins + 1)
    centers = (edges[:-1] + edges[1:]) / 2
    width = (AXIS_HI - AXIS_LO) / bins
    counts = {rule: summary["histograms"][rule] for rule in rules}

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(centers, counts[rule_b], width=width, color=BASELINE_COLOR, alpha=0.55,
           label=rule_b)
    ax.bar(centers, counts[rule_a], width=width, color=COMPARISON_COLOR, alpha=0.55,
           label=rule_a)
    ax.axvline(summary["median_voter_mean"], color="black", linewidth=1.5,
               label="median voter")
    cfg = summary["config"]
    ax.set_xlim(AXIS_LO, AXIS_HI)
    ax.set_xlabel("winner position")
    ax.set_ylabel("elections")
    ax.set_title(f"{cfg['state']} ({cfg['flavor']}, k={cfg['k']}, {cfg['model']})")
    ax.legend()
    fig.tight_layout()
    return fig, counts


def render_state_bars(
    summaries: list[dict],
    rules: tuple[str, str],
    models: list[str],
):
    """Per-state bars of the rule-pair relative difference.

    One model gives plain blue bars; two models overlay the comparison
    (orange, narrower) on the baseline (blue). States missing a required
    summary, or with a zero-denominator average, are listed and skipped.
    """
    if not 1 <= len(models) <= 2:
        raise InputError("state bars take one baseline model and at most one comparison")
    check_comparable(summaries)
    by_state: dict[str, dict[str, dict]] = {}
    for summary in summaries:
        cfg = summary["config"]
        by_state.setdefault(cfg["state"], {})[cfg["model"]] = summary

    states, series = [], {model: [] for model in models}
    for state in sorted(by_state):
        have = by_state[state]
        missing = [m for m in models if m not in have]
        if missing:
            _warn(f"state {state}: no summary for {', '.join(missing)}; skipped")
            continue
        values = {}
        for model in models:
            rd = _relative_difference(have[model], *rules)
            if rd is None:
                break
            values[model] = rd
        else:
            states.append(state)
            for model in models:
                series[model].append(values[model])
            continue
        _warn(f"state {state}: zero average for {rules[1]}; skipped")

    if not states:
        raise InputError("no plottable states")

    x = np.arange(len(states))
    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(states) + 2), 4.5))
    ax.bar(x, series[models[0]], width=0.8, color=BASELINE_COLOR, label=models[0])
    if len(models) == 2:
        ax.bar(x, series[models[1]], width=0.45, color="tab:orange",
               label=models[1])
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xticks(x, states, rotation=45, ha="right")
    ax.set_ylabel(f"relative difference, {rules[0]} vs {rules[1]}")
    ax.legend()
    fig.tight_layout()
    return fig, {"states": states, **series}


def render_mean_variance_scatter(
    summaries: list[dict],
    rules: tuple[str, str],
    metric: str,
    model: str | None = None,
    baseline: str | None = None,
    comparison: str | None = None,
    labels: bool = False,
):
    """States embedded at (|distribution mean|, variance), colored by a
    comparison metric.

    ``relative-difference`` colors by the rule-pair gap within ``model``;
    ``relative-change`` colors by the proportional change in that gap from
    ``baseline`` to ``comparison``, on a diverging scale anchored at -1
    and 0. States with undefined metric values are listed and skipped.
    """
    check_comparable(summaries)
    by_state: dict[str, dict[str, dict]] = {}
    for summary in summaries:
        cfg = summary["config"]
        by_state.setdefault(cfg["state"], {})[cfg["model"]] = summary

    points = []
    for state in sorted(by_state):
        have = by_state[state]
        if metric == "relative-difference":
            if model not in have:
                _warn(f"state {state}: no summary for {model}; skipped")
                continue
            value = _relative_difference(have[model], *rules)
            source = have[model]
        elif metric == "relative-change":
            if baseline not in have or comparison not in have:
                _warn(f"state {state}: missing {baseline} or {comparison}; skipped")
                continue
            rd_from = _relative_difference(have[baseline], *rules)
            rd_to = _relative_difference(have[comparison], *rules)
            if rd_from in (None, 0.0) or rd_to is None:
                value = None
                source = have[baseline]
            else:
                value = (rd_to - rd_from) / rd_from
                source = have[baseline]
        else:
            raise InputError(f"unknown metric {metric!r}")
        if value is None:
            _warn(f"state {state}: metric undefined; skipped")
            continue
        points.append(
            (
                state,
                abs(source["distribution_mean"]),
                source["distribution_variance"],
                value,
            )
        )

    if not points:
        raise InputError("no plottable states")

    xs = [p[1] for p in points]
    ys = [p[2] for p in points]
    vs = [p[3] for p in points]
    fig, ax = plt.subplots(figsize=(6.5, 5))
    if metric == "relative-change":
        vmin, vmax = min(-1.0, min(vs)), max(0.0, max(vs))
        cmap = "coolwarm"
    else:
        vmin, vmax = min(vs), max(vs)
        cmap = "viridis"
    scat = ax.scatter(xs, ys, c=vs, cmap=cmap, vmin=vmin, vmax=vmax, s=60,
                      edgecolors="black", linewidths=0.4)
    if labels:
        for state, x, y, _ in points:
            ax.annotate(state, (x, y), textcoords="offset points", xytext=(4, 3),
                        fontsize=8)
    fig.colorbar(scat, ax=ax, label=metric)
    ax.set_xlabel("|distribution mean|")
    ax.set_ylabel("distribution variance")
    fig.tight_layout()
    return fig, {
        "states": [p[0] for p in points],
        "x": xs,
        "y": ys,
        "values": vs,
        "clim": (vmin, vmax),
    }


def save_figure(fig, out_path, *, dpi: int = 150) -> None:
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
