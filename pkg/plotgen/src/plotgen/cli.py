"""plotgen command line: render figures from simulator output files.

    plotgen histogram-overlay --in RUN.summary.json --rules irv,minimax --out FIG.png
    plotgen state-bars --in *.summary.json --rules irv,minimax \
        --models theoretical-ideal,most-realistic --out FIG.png
    plotgen mean-variance-scatter --in *.summary.json --metric relative-change \
        --rules irv,minimax --baseline theoretical-ideal \
        --comparison most-realistic --out FIG.png

Output is raster PNG by default; --svg (or an .svg output name) switches
to vector. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys

from .figures import (
    render_histogram_overlay,
    render_mean_variance_scatter,
    render_state_bars,
    save_figure,
)
from .inputs import InputError, load_summaries, load_summary


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rules(text: str) -> tuple[str, str]:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    if len(parts) != 2:
        raise UsageError("--rules needs exactly two rule names, e.g. irv,minimax")
    return parts


def build_parser() -> _Parser:
    parser = _Parser(prog="plotgen")
    sub = parser.add_subparsers(dest="command", required=True)

    hist = sub.add_parser("histogram-overlay", help="two rules' winner histograms for one run")
    hist.add_argument("--in", dest="inputs", nargs=1, required=True)
    hist.add_argument("--rules", default="irv,minimax")
    hist.add_argument("--out", required=True)
    hist.add_argument("--dpi", type=int, default=150)
    hist.add_argument("--svg", action="store_true", help="vector output")

    bars = sub.add_parser("state-bars", help="per-state relative-difference bars")
    bars.add_argument("--in", dest="inputs", nargs="+", required=True)
    bars.add_argument("--rules", default="irv,minimax")
    bars.add_argument("--models", required=True, help="baseline[,comparison]")
    bars.add_argument("--out", required=True)
    bars.add_argument("--dpi", type=int, default=150)
    bars.add_argument("--svg", action="store_true", help="vector output")

    scatter = sub.add_parser("mean-variance-scatter", help="state embedding colored by a metric")
    scatter.add_argument("--in", dest="inputs", nargs="+", required=True)
    scatter.add_argument("--rules", default="irv,minimax")
    scatter.add_argument("--metric", choices=("relative-difference", "relative-change"),
                         default="relative-difference")
    scatter.add_argument("--model", help="model for relative-difference")
    scatter.add_argument("--baseline", help="from-model for relative-change")
    scatter.add_argument("--comparison", help="to-model for relative-change")
    scatter.add_argument("--labels", action="store_true", help="annotate state names")
    scatter.add_argument("--out", required=True)
    scatter.add_argument("--dpi", type=int, default=150)
    scatter.add_argument("--svg", action="store_true", help="vector output")

    return parser


def run(args) -> int:
    rules = _rules(args.rules)
    if args.command == "histogram-overlay":
        fig, _ = render_histogram_overlay(load_summary(args.inputs[0]), rules)
    elif args.command == "state-bars":
        models = [m.strip() for m in args.models.split(",") if m.strip()]
        fig, _ = render_state_bars(load_summaries(args.inputs), rules, models)
    else:
        if args.metric == "relative-difference" and not args.model:
            raise UsageError("--metric relative-difference needs --model")
        if args.metric == "relative-change" and not (args.baseline and args.comparison):
            raise UsageError("--metric relative-change needs --baseline and --comparison")
        fig, _ = render_mean_variance_scatter(
            load_summaries(args.inputs),
            rules,
            args.metric,
            model=args.model,
            baseline=args.baseline,
            comparison=args.comparison,
            labels=args.labels,
        )
    out = args.out
    if args.svg and not out.endswith(".svg"):
        out = out.rsplit(".", 1)[0] + ".svg" if "." in out else out + ".svg"
    save_figure(fig, out, dpi=args.dpi)
    print(out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        return run(parser.parse_args(argv))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
